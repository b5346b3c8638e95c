#include "lieconf/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace lieconf::dsl {

namespace {

// ---------------------------------------------------------------- lexer --

enum class Tok {
    ident,
    number, // unsigned integer literal; rationals are assembled in the parser
    punct,
    eof,
};

struct Token {
    Tok kind = Tok::eof;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run(std::vector<Diagnostic>& diags) {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= src_.size())
                break;
            char c = src_[pos_];
            SourceSpan span = here();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                span.end = pos_;
                out.push_back({Tok::ident, std::string(src_.substr(start, pos_ - start)), span});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    advance();
                span.end = pos_;
                out.push_back({Tok::number, std::string(src_.substr(start, pos_ - start)), span});
            } else if (std::string_view("{}[](),;=+-*/^.").find(c) != std::string_view::npos) {
                advance();
                span.end = pos_;
                out.push_back({Tok::punct, std::string(1, c), span});
            } else {
                advance();
                span.end = pos_;
                diags.push_back({false, span, std::string("unexpected character '") + c + "'"});
            }
        }
        out.push_back({Tok::eof, "", here()});
        return out;
    }

private:
    SourceSpan here() const { return {pos_, pos_, line_, col_}; }

    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// --------------------------------------------------------------- parser --

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.end = std::max(a.end, b.end);
    return s;
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : toks_(std::move(tokens)), diags_(diags) {}

    AlgDefAst parse_file() {
        AlgDefAst ast;
        while (!at_eof()) {
            if (peek_ident("algebra")) {
                if (auto alg = parse_algebra())
                    ast.algebras.push_back(std::move(*alg));
            } else {
                error(cur().span, "expected 'algebra'");
                sync_to_ident("algebra");
            }
        }
        if (ast.algebras.empty() && !failed())
            error(cur().span, "input declares no algebra");
        return ast;
    }

    bool failed() const {
        return std::any_of(diags_.begin(), diags_.end(),
                           [](const Diagnostic& d) { return !d.warning; });
    }

private:
    const Token& cur() const { return toks_[idx_]; }
    bool at_eof() const { return cur().kind == Tok::eof; }

    bool peek_ident(std::string_view kw) const {
        return cur().kind == Tok::ident && cur().text == kw;
    }
    bool peek_punct(std::string_view p) const {
        return cur().kind == Tok::punct && cur().text == p;
    }

    Token take() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }

    bool eat_punct(std::string_view p) {
        if (peek_punct(p)) {
            take();
            return true;
        }
        return false;
    }

    void expect_punct(std::string_view p) {
        if (!eat_punct(p))
            error(cur().span, "expected '" + std::string(p) + "'");
    }

    void error(const SourceSpan& span, std::string msg) {
        diags_.push_back({false, span, std::move(msg)});
    }

    void sync_to_ident(std::string_view kw) {
        while (!at_eof() && !peek_ident(kw))
            take();
    }
    void sync_past_punct(std::string_view p) {
        while (!at_eof() && !peek_punct(p) && !peek_punct("}"))
            take();
        eat_punct(p);
    }

    std::optional<Ident> parse_ident(const char* what) {
        if (cur().kind != Tok::ident) {
            error(cur().span, std::string("expected ") + what);
            return std::nullopt;
        }
        Token t = take();
        return Ident{t.text, t.span};
    }

    std::vector<Ident> parse_ident_list(const char* what) {
        std::vector<Ident> out;
        do {
            if (auto id = parse_ident(what))
                out.push_back(std::move(*id));
            else
                break;
        } while (eat_punct(","));
        expect_punct(";");
        return out;
    }

    std::optional<AlgebraDef> parse_algebra() {
        AlgebraDef def;
        SourceSpan start = take().span; // 'algebra'
        if (auto name = parse_ident("algebra name"))
            def.name = std::move(*name);
        else
            return std::nullopt;
        expect_punct("{");

        if (peek_ident("params")) {
            take();
            def.params = parse_ident_list("parameter name");
        }
        if (peek_ident("generators")) {
            take();
            def.generators = parse_ident_list("generator name");
        } else {
            error(cur().span, "expected 'generators'");
        }

        if (peek_ident("brackets")) {
            take();
            expect_punct("{");
            while (!peek_punct("}") && !at_eof()) {
                if (auto eq = parse_bracket_eq())
                    def.brackets.push_back(std::move(*eq));
                else
                    sync_past_punct(";");
            }
            expect_punct("}");
        } else {
            error(cur().span, "expected 'brackets'");
        }

        while (peek_ident("module")) {
            if (auto mod = parse_module())
                def.modules.push_back(std::move(*mod));
        }
        expect_punct("}");
        def.span = join(start, cur().span);
        return def;
    }

    std::optional<BracketEq> parse_bracket_eq() {
        BracketEq eq;
        SourceSpan start = cur().span;
        expect_punct("[");
        if (auto a = parse_ident("generator name"))
            eq.a = std::move(*a);
        else
            return std::nullopt;
        expect_punct(",");
        if (auto b = parse_ident("generator name"))
            eq.b = std::move(*b);
        else
            return std::nullopt;
        expect_punct("]");
        expect_punct("=");
        eq.rhs = parse_expr();
        if (!eq.rhs)
            return std::nullopt;
        eq.span = join(start, eq.rhs->span);
        expect_punct(";");
        return eq;
    }

    std::optional<ModuleDef> parse_module() {
        ModuleDef def;
        SourceSpan start = take().span; // 'module'
        if (auto name = parse_ident("module name"))
            def.name = std::move(*name);
        else
            return std::nullopt;
        expect_punct("{");
        if (peek_ident("rank")) {
            take();
            if (cur().kind == Tok::number) {
                def.rank = std::stol(take().text);
            } else {
                error(cur().span, "expected rank integer");
            }
            expect_punct(";");
        } else {
            error(cur().span, "expected 'rank'");
        }
        if (def.rank < 1) {
            error(def.name.span, "module rank must be >= 1");
            def.rank = 1;
        }
        while (!peek_punct("}") && !at_eof()) {
            ActionEq act;
            SourceSpan s = cur().span;
            auto gen = parse_ident("generator name");
            if (!gen) {
                sync_past_punct(";");
                continue;
            }
            act.gen = std::move(*gen);
            expect_punct(".");
            auto vec = parse_ident("basis vector name");
            if (!vec) {
                sync_past_punct(";");
                continue;
            }
            act.vec = std::move(*vec);
            expect_punct("=");
            act.rhs = parse_expr();
            if (!act.rhs) {
                sync_past_punct(";");
                continue;
            }
            act.span = join(s, act.rhs->span);
            expect_punct(";");
            def.actions.push_back(std::move(act));
        }
        expect_punct("}");
        def.span = join(start, cur().span);
        return def;
    }

    // expr := term (('+'|'-') term)*
    ExprPtr parse_expr() {
        auto lhs = parse_term();
        if (!lhs)
            return nullptr;
        while (peek_punct("+") || peek_punct("-")) {
            bool plus = cur().text == "+";
            take();
            auto rhs = parse_term();
            if (!rhs)
                return nullptr;
            auto node = std::make_unique<Expr>();
            node->kind = plus ? Expr::Kind::add : Expr::Kind::sub;
            node->span = join(lhs->span, rhs->span);
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    // term := factor ('*' factor)*
    ExprPtr parse_term() {
        auto lhs = parse_factor();
        if (!lhs)
            return nullptr;
        while (peek_punct("*")) {
            take();
            auto rhs = parse_factor();
            if (!rhs)
                return nullptr;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::mul;
            node->span = join(lhs->span, rhs->span);
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    // factor := '-' factor | primary ('^' INT)?
    ExprPtr parse_factor() {
        if (peek_punct("-")) {
            SourceSpan s = take().span;
            auto inner = parse_factor();
            if (!inner)
                return nullptr;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::neg;
            node->span = join(s, inner->span);
            node->lhs = std::move(inner);
            return node;
        }
        auto base = parse_primary();
        if (!base)
            return nullptr;
        if (peek_punct("^")) {
            take();
            if (cur().kind != Tok::number) {
                error(cur().span, "expected integer exponent");
                return nullptr;
            }
            Token t = take();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::pow;
            node->span = join(base->span, t.span);
            node->lhs = std::move(base);
            node->exponent = static_cast<unsigned>(std::stoul(t.text));
            return node;
        }
        return base;
    }

    // primary := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'
    ExprPtr parse_primary() {
        if (cur().kind == Tok::number) {
            Token num = take();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::number;
            node->span = num.span;
            if (peek_punct("/")) {
                take();
                if (cur().kind != Tok::number) {
                    error(cur().span, "expected denominator");
                    return nullptr;
                }
                Token den = take();
                if (den.text == "0" || den.text.find_first_not_of('0') == std::string::npos) {
                    error(den.span, "zero denominator");
                    return nullptr;
                }
                node->value = rational_from_string(num.text + "/" + den.text);
                node->span = join(num.span, den.span);
            } else {
                node->value = rational_from_string(num.text);
            }
            return node;
        }
        if (cur().kind == Tok::ident) {
            Token t = take();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::ident;
            node->span = t.span;
            node->name = t.text;
            return node;
        }
        if (peek_punct("(")) {
            take();
            auto inner = parse_expr();
            if (!inner)
                return nullptr;
            expect_punct(")");
            return inner;
        }
        error(cur().span, "expected number, name or '('");
        return nullptr;
    }

    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    std::size_t idx_ = 0;
};

// ---------------------------------------------------------- scope check --

const std::set<std::string>& reserved_names() {
    static const std::set<std::string> r{"pa", "la", "mu", "nu", "algebra", "params",
                                         "generators", "brackets", "module", "rank"};
    return r;
}

void check_expr_scope(const Expr& e, const std::set<std::string>& scalars,
                      const std::set<std::string>& vectors, std::vector<Diagnostic>& diags) {
    switch (e.kind) {
    case Expr::Kind::number:
        return;
    case Expr::Kind::ident:
        if (e.name == "mu" || e.name == "nu") {
            diags.push_back({false, e.span, "'" + e.name + "' is reserved and cannot appear here"});
        } else if (!scalars.count(e.name) && !vectors.count(e.name)) {
            diags.push_back({false, e.span, "undeclared name '" + e.name + "'"});
        }
        return;
    case Expr::Kind::neg:
    case Expr::Kind::pow:
        check_expr_scope(*e.lhs, scalars, vectors, diags);
        return;
    default:
        check_expr_scope(*e.lhs, scalars, vectors, diags);
        check_expr_scope(*e.rhs, scalars, vectors, diags);
        return;
    }
}

void resolve(const AlgDefAst& ast, std::vector<Diagnostic>& diags) {
    std::set<std::string> algebra_names;
    for (const auto& alg : ast.algebras) {
        if (!algebra_names.insert(alg.name.name).second)
            diags.push_back({false, alg.name.span, "duplicate algebra '" + alg.name.name + "'"});

        std::set<std::string> declared;
        auto declare = [&](const Ident& id, const char* what) {
            if (reserved_names().count(id.name))
                diags.push_back({false, id.span, "'" + id.name + "' is a reserved name"});
            else if (!declared.insert(id.name).second)
                diags.push_back(
                    {false, id.span, std::string("duplicate ") + what + " '" + id.name + "'"});
        };
        for (const auto& p : alg.params)
            declare(p, "parameter");
        std::set<std::string> generators;
        for (const auto& g : alg.generators) {
            declare(g, "generator");
            generators.insert(g.name);
        }
        if (alg.generators.empty())
            diags.push_back({false, alg.name.span, "algebra declares no generators"});

        std::set<std::string> scalars{"pa", "la"};
        for (const auto& p : alg.params)
            scalars.insert(p.name);

        std::set<std::string> seen_pairs;
        for (const auto& eq : alg.brackets) {
            for (const Ident* side : {&eq.a, &eq.b})
                if (!generators.count(side->name))
                    diags.push_back({false, side->span,
                                     "undeclared generator '" + side->name + "' in bracket"});
            if (!seen_pairs.insert(eq.a.name + "," + eq.b.name).second)
                diags.push_back({false, eq.span, "bracket [" + eq.a.name + "," + eq.b.name +
                                                     "] specified twice"});
            if (eq.rhs)
                check_expr_scope(*eq.rhs, scalars, generators, diags);
        }

        std::set<std::string> module_names;
        for (const auto& mod : alg.modules) {
            if (!module_names.insert(mod.name.name).second)
                diags.push_back(
                    {false, mod.name.span, "duplicate module '" + mod.name.name + "'"});
            std::set<std::string> vectors;
            for (long i = 1; i <= mod.rank; ++i)
                vectors.insert("v" + std::to_string(i));
            std::set<std::string> seen_actions;
            for (const auto& act : mod.actions) {
                if (!generators.count(act.gen.name))
                    diags.push_back({false, act.gen.span,
                                     "undeclared generator '" + act.gen.name + "' in action"});
                if (!vectors.count(act.vec.name))
                    diags.push_back({false, act.vec.span,
                                     "unknown basis vector '" + act.vec.name + "' (rank " +
                                         std::to_string(mod.rank) + " declares v1..v" +
                                         std::to_string(mod.rank) + ")"});
                if (!seen_actions.insert(act.gen.name + "." + act.vec.name).second)
                    diags.push_back({false, act.span, "action " + act.gen.name + "." +
                                                          act.vec.name + " specified twice"});
                if (act.rhs)
                    check_expr_scope(*act.rhs, scalars, vectors, diags);
            }
        }
    }
}

} // namespace

ParseResult parse(std::string_view text) {
    ParseResult result;
    Lexer lexer(text);
    auto tokens = lexer.run(result.diagnostics);
    Parser parser(std::move(tokens), result.diagnostics);
    AlgDefAst ast = parser.parse_file();
    if (!parser.failed())
        resolve(ast, result.diagnostics);
    bool has_error = std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                                 [](const Diagnostic& d) { return !d.warning; });
    if (!has_error)
        result.ast = std::move(ast);
    return result;
}

// ----------------------------------------------------------- elaborator --

namespace {

/// Value of an rhs expression: a scalar polynomial plus a linear combination
/// of module-like symbols (generators or basis vectors).
struct LinearValue {
    ExactPoly scalar;
    std::map<std::size_t, ExactPoly> vec;
};

LinearValue eval_expr(const Expr& e, const ContextPtr& ctx,
                      const std::map<std::string, std::size_t>& symbols) {
    switch (e.kind) {
    case Expr::Kind::number:
        return {ExactPoly::constant(ctx, e.value), {}};
    case Expr::Kind::ident: {
        auto it = symbols.find(e.name);
        if (it != symbols.end()) {
            LinearValue v{ExactPoly::zero(ctx), {}};
            v.vec.emplace(it->second, ExactPoly::constant(ctx, Rational(1)));
            return v;
        }
        return {ExactPoly::variable(ctx, e.name), {}};
    }
    case Expr::Kind::neg: {
        auto v = eval_expr(*e.lhs, ctx, symbols);
        v.scalar = -v.scalar;
        for (auto& [k, c] : v.vec)
            c = -c;
        return v;
    }
    case Expr::Kind::add:
    case Expr::Kind::sub: {
        auto a = eval_expr(*e.lhs, ctx, symbols);
        auto b = eval_expr(*e.rhs, ctx, symbols);
        Rational sign(e.kind == Expr::Kind::add ? 1 : -1);
        a.scalar += b.scalar * sign;
        for (auto& [k, c] : b.vec) {
            auto [it, inserted] = a.vec.emplace(k, c * sign);
            if (!inserted)
                it->second += c * sign;
        }
        return a;
    }
    case Expr::Kind::mul: {
        auto a = eval_expr(*e.lhs, ctx, symbols);
        auto b = eval_expr(*e.rhs, ctx, symbols);
        if (!a.vec.empty() && !b.vec.empty())
            throw DomainError("products of generators or basis vectors are not allowed");
        if (!a.vec.empty())
            std::swap(a, b);
        LinearValue out{a.scalar * b.scalar, {}};
        for (auto& [k, c] : b.vec)
            out.vec.emplace(k, a.scalar * c);
        return out;
    }
    case Expr::Kind::pow: {
        auto a = eval_expr(*e.lhs, ctx, symbols);
        if (!a.vec.empty())
            throw DomainError("generators cannot be raised to powers");
        return {a.scalar.pow(e.exponent), {}};
    }
    }
    throw DomainError("unreachable expression kind");
}

LambdaElement to_lambda_element(const LinearValue& v, std::size_t rank, const ContextPtr& ctx,
                                const SourceSpan& span, std::vector<Diagnostic>& diags,
                                const char* what) {
    LambdaElement out{std::vector<ExactPoly>(rank, ExactPoly::zero(ctx))};
    if (!v.scalar.is_zero())
        diags.push_back({false, span,
                         std::string(what) + " must be a linear combination of symbols "
                                             "(a bare scalar remains)"});
    for (const auto& [k, c] : v.vec)
        out.coeffs[k] = c;
    return out;
}

LambdaElement skewed(const ContextPtr& ctx, const LambdaElement& e) {
    auto minus_la_pa = -ExactPoly::variable(ctx, "la") - ExactPoly::variable(ctx, "pa");
    LambdaElement out = e;
    for (auto& c : out.coeffs)
        c = -c.substitute(PolyContext::kLambda, minus_la_pa);
    return out;
}

} // namespace

std::vector<ElaboratedAlgebra> elaborate(const AlgDefAst& ast) {
    std::vector<ElaboratedAlgebra> out;
    for (const auto& def : ast.algebras) {
        std::vector<std::string> params;
        for (const auto& p : def.params)
            params.push_back(p.name);
        auto ctx = PolyContext::make(params);

        std::vector<std::string> gens;
        std::map<std::string, std::size_t> gen_index;
        for (const auto& g : def.generators) {
            gen_index.emplace(g.name, gens.size());
            gens.push_back(g.name);
        }
        const std::size_t k = gens.size();

        ElaboratedAlgebra unit;

        std::vector<std::vector<std::optional<LambdaElement>>> table(
            k, std::vector<std::optional<LambdaElement>>(k));
        std::vector<Diagnostic> dummy;
        for (const auto& eq : def.brackets) {
            std::size_t i = gen_index.at(eq.a.name);
            std::size_t j = gen_index.at(eq.b.name);
            auto value = eval_expr(*eq.rhs, ctx, gen_index);
            auto elem = to_lambda_element(value, k, ctx, eq.span, dummy, "bracket right-hand side");
            if (!dummy.empty())
                throw ElaborationError(dummy.front().message, {"elaborate", def.name.name, {}});
            for (const auto& c : elem.coeffs)
                if (c.depends_on(PolyContext::kMu) || c.depends_on(PolyContext::kNu))
                    throw ElaborationError("bracket coefficients must live in pa, la",
                                           {"elaborate", def.name.name, {}});
            table[i][j] = std::move(elem);
        }

        // complete by skew-symmetry; check agreement when both orders given
        LambdaElement zero{std::vector<ExactPoly>(k, ExactPoly::zero(ctx))};
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                auto& fwd = table[i][j];
                auto& rev = table[j][i];
                if (i == j) {
                    if (!fwd) {
                        fwd = zero;
                        unit.warnings.push_back(
                            {true, def.span,
                             "bracket [" + gens[i] + "," + gens[j] + "] unspecified, assuming 0"});
                    }
                    continue;
                }
                if (fwd && rev) {
                    auto expect = skewed(ctx, *fwd);
                    CheckReport rep{"skew-agreement", def.name.name, {}};
                    for (std::size_t c = 0; c < k; ++c) {
                        ExactPoly d = rev->coeffs[c] - expect.coeffs[c];
                        if (!d.is_zero())
                            rep.add("skew(" + gens[i] + "," + gens[j] + ") @ " + gens[c],
                                    std::move(d));
                    }
                    if (!rep.pass())
                        throw ElaborationError("brackets [" + gens[i] + "," + gens[j] + "] and [" +
                                                   gens[j] + "," + gens[i] +
                                                   "] disagree with skew-symmetry",
                                               std::move(rep));
                } else if (fwd) {
                    rev = skewed(ctx, *fwd);
                } else if (rev) {
                    fwd = skewed(ctx, *rev);
                } else {
                    fwd = zero;
                    rev = zero;
                    unit.warnings.push_back(
                        {true, def.span,
                         "bracket [" + gens[i] + "," + gens[j] + "] unspecified, assuming 0"});
                }
            }
        }

        std::vector<std::vector<LambdaElement>> final_table;
        for (auto& row : table) {
            std::vector<LambdaElement> r;
            for (auto& e : row)
                r.push_back(std::move(*e));
            final_table.push_back(std::move(r));
        }
        auto algebra = std::make_shared<ConformalAlgebra>(def.name.name, ctx, gens,
                                                          std::move(final_table));

        auto skew_rep = check_skew(*algebra);
        auto jacobi_rep = check_jacobi(*algebra);
        if (!skew_rep.pass() || !jacobi_rep.pass()) {
            CheckReport merged{"axioms", def.name.name, {}};
            for (auto& w : skew_rep.witnesses)
                merged.witnesses.push_back(std::move(w));
            for (auto& w : jacobi_rep.witnesses)
                merged.witnesses.push_back(std::move(w));
            throw ElaborationError("algebra '" + def.name.name + "' violates the axioms",
                                   std::move(merged));
        }

        unit.algebra = algebra;

        for (const auto& mod : def.modules) {
            const std::size_t r = static_cast<std::size_t>(mod.rank);
            std::vector<std::string> basis;
            std::map<std::string, std::size_t> vec_index;
            for (std::size_t s = 1; s <= r; ++s) {
                vec_index.emplace("v" + std::to_string(s), s - 1);
                basis.push_back("v" + std::to_string(s));
            }
            LambdaElement mzero{std::vector<ExactPoly>(r, ExactPoly::zero(ctx))};
            std::vector<std::vector<LambdaElement>> action(k, std::vector<LambdaElement>(r, mzero));
            for (const auto& act : mod.actions) {
                auto value = eval_expr(*act.rhs, ctx, vec_index);
                auto elem =
                    to_lambda_element(value, r, ctx, act.span, dummy, "action right-hand side");
                if (!dummy.empty())
                    throw ElaborationError(dummy.front().message,
                                           {"elaborate", mod.name.name, {}});
                action[gen_index.at(act.gen.name)][vec_index.at(act.vec.name)] = std::move(elem);
            }
            ConformalModule module(algebra, ctx, mod.name.name, basis, std::move(action));
            auto mod_rep = check_module_axioms(module);
            if (!mod_rep.pass())
                throw ElaborationError("module '" + mod.name.name + "' violates the module axioms",
                                       std::move(mod_rep));
            unit.modules.push_back({mod.name.name, std::move(module)});
        }

        out.push_back(std::move(unit));
    }
    return out;
}

// -------------------------------------------------------------- printer --

namespace {

std::string sanitize_ident(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
        out = "A" + out;
    return out;
}

std::string rhs_text(const std::vector<std::string>& symbols, const LambdaElement& e) {
    std::vector<std::string> pieces;
    for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
        const auto& c = e.coeffs[k];
        if (c.is_zero())
            continue;
        if (auto r = c.as_rational()) {
            if (*r == 1)
                pieces.push_back(symbols[k]);
            else if (*r == -1)
                pieces.push_back("-" + symbols[k]);
            else
                pieces.push_back(to_string(*r) + "*" + symbols[k]);
        } else if (c.terms().size() == 1) {
            pieces.push_back(c.str() + "*" + symbols[k]);
        } else {
            pieces.push_back("(" + c.str() + ")*" + symbols[k]);
        }
    }
    if (pieces.empty())
        return "0";
    std::string out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i == 0)
            out = pieces[i];
        else if (pieces[i][0] == '-')
            out += " - " + pieces[i].substr(1);
        else
            out += " + " + pieces[i];
    }
    return out;
}

std::vector<std::string> used_parameters(const ConformalAlgebra& A,
                                         const std::vector<ElaboratedModule>& modules) {
    std::vector<std::string> used;
    auto scan = [&](const ExactPoly& p) {
        for (const auto& t : p.terms())
            for (std::size_t v = PolyContext::kFormalCount; v < t.mono.size(); ++v)
                if (t.mono[v] != 0) {
                    const auto& name = p.context()->var(v).name;
                    if (std::find(used.begin(), used.end(), name) == used.end())
                        used.push_back(name);
                }
    };
    for (GeneratorId i = 0; i < A.rank(); ++i)
        for (GeneratorId j = 0; j < A.rank(); ++j)
            for (const auto& c : A.entry(i, j).coeffs)
                scan(c);
    for (const auto& m : modules)
        for (GeneratorId g = 0; g < A.rank(); ++g)
            for (std::size_t s = 0; s < m.module.rank(); ++s)
                for (const auto& c : m.module.action_on(g, s).coeffs)
                    scan(c);
    std::sort(used.begin(), used.end());
    return used;
}

} // namespace

std::string print(const ConformalAlgebra& A, const std::vector<ElaboratedModule>& modules) {
    std::ostringstream out;
    out << "algebra " << sanitize_ident(A.name()) << " {\n";
    auto params = used_parameters(A, modules);
    if (!params.empty()) {
        out << "  params ";
        for (std::size_t i = 0; i < params.size(); ++i)
            out << (i ? ", " : "") << params[i];
        out << ";\n";
    }
    out << "  generators ";
    for (std::size_t i = 0; i < A.rank(); ++i)
        out << (i ? ", " : "") << A.generator_name(i);
    out << ";\n";
    out << "  brackets {\n";
    for (GeneratorId i = 0; i < A.rank(); ++i)
        for (GeneratorId j = 0; j < A.rank(); ++j)
            out << "    [" << A.generator_name(i) << "," << A.generator_name(j)
                << "] = " << rhs_text(A.generator_names(), A.entry(i, j)) << ";\n";
    out << "  }\n";
    for (const auto& m : modules) {
        out << "  module " << sanitize_ident(m.name) << " {\n";
        out << "    rank " << m.module.rank() << ";\n";
        for (GeneratorId g = 0; g < A.rank(); ++g)
            for (std::size_t s = 0; s < m.module.rank(); ++s) {
                const auto& e = m.module.action_on(g, s);
                if (e.is_zero())
                    continue;
                out << "    " << A.generator_name(g) << "." << m.module.basis_names()[s] << " = "
                    << rhs_text(m.module.basis_names(), e) << ";\n";
            }
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

std::string print(const ConformalAlgebra& A) {
    return print(A, {});
}

} // namespace lieconf::dsl
