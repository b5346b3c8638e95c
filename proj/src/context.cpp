#include "lieconf/context.hpp"

#include <algorithm>

namespace lieconf {

const std::array<std::string_view, PolyContext::kFormalCount>& PolyContext::formal_names() {
    static const std::array<std::string_view, kFormalCount> names{"pa", "la", "mu", "nu"};
    return names;
}

std::shared_ptr<const PolyContext> PolyContext::make(std::vector<std::string> params) {
    auto ctx = std::shared_ptr<PolyContext>(new PolyContext());
    for (auto name : formal_names())
        ctx->vars_.push_back({std::string(name), VarKind::formal});
    for (auto& p : params) {
        if (std::find(formal_names().begin(), formal_names().end(), p) != formal_names().end())
            throw DomainError("parameter name '" + p + "' is reserved");
        if (ctx->find(p))
            throw DomainError("duplicate parameter name '" + p + "'");
        ctx->vars_.push_back({std::move(p), VarKind::parameter});
    }
    return ctx;
}

std::optional<std::size_t> PolyContext::find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t PolyContext::index_of(std::string_view name) const {
    if (auto i = find(name))
        return *i;
    throw DomainError("unknown variable '" + std::string(name) + "'");
}

bool PolyContext::same_as(const PolyContext& other) const {
    return this == &other || vars_ == other.vars_;
}

bool PolyContext::subset_of(const PolyContext& bigger) const {
    for (const auto& v : vars_) {
        auto i = bigger.find(v.name);
        if (!i || bigger.var(*i).kind != v.kind)
            return false;
    }
    return true;
}

std::shared_ptr<const PolyContext> PolyContext::extend(const std::vector<std::string>& extra) const {
    std::vector<std::string> params = parameter_names();
    for (const auto& p : extra)
        if (!find(p) && std::find(params.begin(), params.end(), p) == params.end())
            params.push_back(p);
    return make(std::move(params));
}

std::vector<std::string> PolyContext::parameter_names() const {
    std::vector<std::string> out;
    for (const auto& v : vars_)
        if (v.kind == VarKind::parameter)
            out.push_back(v.name);
    return out;
}

} // namespace lieconf
