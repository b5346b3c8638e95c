#pragma once

#include "lieconf/errors.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lieconf {

enum class VarKind { formal, parameter };

struct Variable {
    std::string name;
    VarKind kind;
    bool operator==(const Variable&) const = default;
};

/// Immutable ordered variable universe shared by a family of polynomials.
/// The four formal indeterminates pa, la, mu, nu always occupy slots 0..3;
/// parameters follow in declaration order. Two contexts are compatible when
/// their variable lists are identical.
class PolyContext {
public:
    static constexpr std::size_t kPartial = 0;
    static constexpr std::size_t kLambda = 1;
    static constexpr std::size_t kMu = 2;
    static constexpr std::size_t kNu = 3;
    static constexpr std::size_t kFormalCount = 4;

    static const std::array<std::string_view, kFormalCount>& formal_names();

    static std::shared_ptr<const PolyContext> make(std::vector<std::string> params = {});

    std::size_t size() const { return vars_.size(); }
    const Variable& var(std::size_t i) const { return vars_.at(i); }
    bool is_parameter(std::size_t i) const { return vars_.at(i).kind == VarKind::parameter; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const; // throws DomainError

    bool same_as(const PolyContext& other) const;
    /// True when every variable of this context appears (by name and kind)
    /// in `bigger`.
    bool subset_of(const PolyContext& bigger) const;

    /// This context's variables plus `extra` parameters (duplicates ignored).
    std::shared_ptr<const PolyContext> extend(const std::vector<std::string>& extra) const;

    std::vector<std::string> parameter_names() const;

private:
    PolyContext() = default;
    std::vector<Variable> vars_;
};

using ContextPtr = std::shared_ptr<const PolyContext>;

} // namespace lieconf
