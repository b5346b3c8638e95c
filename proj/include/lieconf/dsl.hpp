#pragma once

#include "lieconf/conformal.hpp"
#include "lieconf/modules.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lieconf::dsl {

struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int col = 1;
};

struct Diagnostic {
    bool warning = false;
    SourceSpan span;
    std::string message;
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind { number, ident, add, sub, mul, neg, pow };
    Kind kind;
    SourceSpan span;
    Rational value;    // number
    std::string name;  // ident
    ExprPtr lhs, rhs;  // binaries; neg uses lhs only
    unsigned exponent = 0; // pow
};

struct Ident {
    std::string name;
    SourceSpan span;
};

struct BracketEq {
    Ident a, b;
    ExprPtr rhs;
    SourceSpan span;
};

struct ActionEq {
    Ident gen, vec;
    ExprPtr rhs;
    SourceSpan span;
};

struct ModuleDef {
    Ident name;
    long rank = 0;
    std::vector<ActionEq> actions;
    SourceSpan span;
};

struct AlgebraDef {
    Ident name;
    std::vector<Ident> params;
    std::vector<Ident> generators;
    std::vector<BracketEq> brackets;
    std::vector<ModuleDef> modules;
    SourceSpan span;
};

struct AlgDefAst {
    std::vector<AlgebraDef> algebras;
};

struct ParseResult {
    std::optional<AlgDefAst> ast; // present iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return ast.has_value(); }
};

/// Lexes, parses and scope-checks; never throws on bad input. Module basis
/// vectors are named v1..vr.
ParseResult parse(std::string_view text);

struct ElaboratedModule {
    std::string name;
    ConformalModule module;
};

struct ElaboratedAlgebra {
    AlgebraPtr algebra;
    std::vector<ElaboratedModule> modules;
    std::vector<Diagnostic> warnings; // e.g. unspecified bracket pairs
};

/// An elaborated table failed skew/Jacobi (or a module failed its axioms);
/// the embedded report carries the residual witnesses.
class ElaborationError : public Error {
public:
    ElaborationError(const std::string& msg, CheckReport rep)
        : Error(msg), report_(std::move(rep)) {}
    const CheckReport& report() const { return report_; }

private:
    CheckReport report_;
};

/// Builds algebras (tables completed by skew-symmetry, unspecified pairs
/// defaulting to zero with a warning) and modules, verifying all axioms
/// before accepting anything.
std::vector<ElaboratedAlgebra> elaborate(const AlgDefAst& ast);

/// Canonical source text: every ordered bracket pair written out, terms in
/// canonical order. print-then-parse-then-elaborate reproduces the table.
std::string print(const ConformalAlgebra& A);
std::string print(const ConformalAlgebra& A, const std::vector<ElaboratedModule>& modules);

} // namespace lieconf::dsl
