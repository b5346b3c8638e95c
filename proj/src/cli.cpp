#include "lieconf/cli.hpp"

#include "lieconf/annihilation.hpp"
#include "lieconf/conformal.hpp"
#include "lieconf/dsl.hpp"
#include "lieconf/modules.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace lieconf::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

using nlohmann::json;

struct Selection {
    AlgebraPtr algebra;
    std::vector<dsl::ElaboratedModule> modules;
};

struct InputError {
    int code;
};

void print_diagnostics(const std::vector<dsl::Diagnostic>& diags, const std::string& file,
                       std::ostream& err) {
    for (const auto& d : diags)
        err << file << ":" << d.span.line << ":" << d.span.col << ": "
            << (d.warning ? "warning: " : "error: ") << d.message << "\n";
}

void emit_report(const CheckReport& rep, bool as_json, std::ostream& out) {
    if (as_json)
        out << to_json_string(rep) << "\n";
    else
        out << to_text(rep) << "\n";
}

/// Loads the algebra named by --algebra/--file; throws InputError after
/// writing diagnostics. An axiom-violating file is a failed check (exit 1).
Selection select_algebra(const std::string& selector, const std::string& file, bool as_json,
                         std::ostream& out, std::ostream& err) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) {
            err << "error: cannot read '" << file << "'\n";
            throw InputError{kUsage};
        }
        std::stringstream buf;
        buf << in.rdbuf();
        auto parsed = dsl::parse(buf.str());
        print_diagnostics(parsed.diagnostics, file, err);
        if (!parsed.ok())
            throw InputError{kUsage};
        try {
            auto units = dsl::elaborate(*parsed.ast);
            for (auto& u : units)
                print_diagnostics(u.warnings, file, err);
            if (selector.empty()) {
                if (units.size() != 1) {
                    err << "error: '" << file << "' defines " << units.size()
                        << " algebras; pick one with --algebra\n";
                    throw InputError{kUsage};
                }
                return {units[0].algebra, std::move(units[0].modules)};
            }
            for (auto& u : units)
                if (u.algebra->name() == selector)
                    return {u.algebra, std::move(u.modules)};
            err << "error: no algebra named '" << selector << "' in '" << file << "'\n";
            throw InputError{kUsage};
        } catch (const dsl::ElaborationError& e) {
            err << "error: " << e.what() << "\n";
            emit_report(e.report(), as_json, out);
            throw InputError{kCheckFailed};
        }
    }
    if (auto builtin = builtin_algebra(selector))
        return {std::make_shared<ConformalAlgebra>(std::move(*builtin)), {}};
    err << "error: unknown algebra '" << selector
        << "' (builtins: vir, w:b, w:<rational>, hv, w22, sv)\n";
    throw InputError{kUsage};
}

std::map<std::string, Rational> parse_pins(const std::string& pins, std::ostream& err) {
    std::map<std::string, Rational> out;
    if (pins.empty())
        return out;
    std::stringstream ss(pins);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            err << "error: pin '" << item << "' is not of the form name=p/q\n";
            throw InputError{kUsage};
        }
        try {
            out.emplace(item.substr(0, eq), rational_from_string(item.substr(eq + 1)));
        } catch (const DomainError& e) {
            err << "error: pin '" << item << "': " << e.what() << "\n";
            throw InputError{kUsage};
        }
    }
    return out;
}

int cmd_check(const Selection& sel, unsigned n_max, bool as_json, std::ostream& out) {
    const auto& A = *sel.algebra;
    unsigned bound = std::max(n_max, locality_bound(A));
    std::vector<CheckReport> reports{check_skew(A), check_jacobi(A),
                                     check_j_product_axioms(A, bound)};
    for (const auto& m : sel.modules)
        reports.push_back(check_module_axioms(m.module));

    bool all_pass = true;
    if (as_json) {
        json j;
        j["schema"] = 1;
        j["algebra"] = A.name();
        j["checks"] = json::array();
        for (const auto& r : reports) {
            j["checks"].push_back(json::parse(to_json_string(r)));
            all_pass = all_pass && r.pass();
        }
        j["verdict"] = all_pass ? "pass" : "fail";
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            out << to_text(r) << "\n";
            all_pass = all_pass && r.pass();
        }
    }
    return all_pass ? kOk : kCheckFailed;
}

int cmd_ann(const Selection& sel, long N, bool verify, bool center, bool solvable, bool as_json,
            std::ostream& out, std::ostream& err) {
    AnnAlgebra ann(sel.algebra);
    const auto& A = *sel.algebra;
    int rc = kOk;
    bool did_something = false;

    if (verify) {
        did_something = true;
        auto rep = verify_presentation(ann, N);
        emit_report(rep, as_json, out);
        if (!rep.pass())
            rc = kCheckFailed;
    }
    if (center) {
        did_something = true;
        if (!A.find_generator("L")) {
            err << "error: --center needs a generator named L\n";
            return kUsage;
        }
        auto x = ann.partial();
        x.add_term(ann.at_display(A.generator_index("L"), Rational(-1)),
                   ExactPoly::constant(ann.context(), Rational(-1)));
        bool c = is_central(ann, x, N);
        if (as_json)
            out << json{{"schema", 1}, {"element", str(ann, x)}, {"central", c}}.dump() << "\n";
        else
            out << "central(" << str(ann, x) << "): " << (c ? "true" : "false") << "\n";
        if (!c)
            rc = kCheckFailed;
    }
    if (solvable) {
        did_something = true;
        auto r = is_solvable_quotient(ann, N);
        std::string nesting = r.nests_single ? "single" : (r.nests_double ? "double" : "none");
        if (as_json)
            out << json{{"schema", 1},
                        {"solvable", r.solvable},
                        {"derived_length", r.derived_length},
                        {"nesting", nesting}}
                       .dump()
                << "\n";
        else
            out << "solvable: " << (r.solvable ? "true" : "false")
                << ", derived length: " << r.derived_length << ", nesting: " << nesting << "\n";
        if (!r.solvable)
            rc = kCheckFailed;
    }
    if (did_something)
        return rc;

    // default: render the bracket table up to display index N
    std::vector<AnnBasisElt> basis;
    for (GeneratorId g = 0; g < A.rank(); ++g)
        for (unsigned raw = 0;; ++raw) {
            AnnBasisElt e{g, raw};
            if (ann.display_index(e) > Rational(N))
                break;
            basis.push_back(e);
        }

    if (as_json) {
        json rows = json::array();
        for (const auto& e1 : basis)
            for (const auto& e2 : basis) {
                auto br = ann_bracket(ann, ann.basis(e1), ann.basis(e2));
                if (!br.is_zero())
                    rows.push_back({{"lhs", str(ann, e1)},
                                    {"rhs", str(ann, e2)},
                                    {"bracket", str(ann, br)}});
            }
        out << json{{"schema", 1}, {"algebra", A.name()}, {"N", N}, {"entries", rows}}.dump(2)
            << "\n";
        return kOk;
    }

    std::vector<std::size_t> widths(basis.size() + 1, 0);
    std::vector<std::vector<std::string>> cells;
    {
        std::vector<std::string> head{""};
        for (const auto& e : basis)
            head.push_back(str(ann, e));
        cells.push_back(std::move(head));
    }
    for (const auto& e1 : basis) {
        std::vector<std::string> row{str(ann, e1)};
        for (const auto& e2 : basis)
            row.push_back(str(ann, ann_bracket(ann, ann.basis(e1), ann.basis(e2))));
        cells.push_back(std::move(row));
    }
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
        out << "\n";
    }
    return kOk;
}

int cmd_classify(const Selection& sel, const std::map<std::string, Rational>& pins, unsigned cap,
                 bool as_json, std::ostream& out, std::ostream& err) {
    AlgebraPtr A = sel.algebra;
    auto pin_of = [&](const char* name) -> std::optional<Rational> {
        auto it = pins.find(name);
        if (it == pins.end())
            return std::nullopt;
        return it->second;
    };

    if (A->family() == "w" && !A->pinned("b")) {
        if (auto b = pin_of("b"))
            A = std::make_shared<ConformalAlgebra>(make_w(*b));
        else {
            err << "error: pin b (w:b has a free parameter), e.g. --pin b=0,D=1,a=0\n";
            return kUsage;
        }
    }
    auto delta = pin_of("D");
    auto alpha = pin_of("a");
    if (!delta || !alpha) {
        err << "error: classification needs --pin D=<rational>,a=<rational>\n";
        return kUsage;
    }

    ConformalModule module = [&]() {
        if (A->family() == "sv") {
            if (pin_of("beta")) {
                err << "error: sv modules have no beta parameter\n";
                throw InputError{kUsage};
            }
            return make_rank_one_sv(*delta, *alpha);
        }
        if (A->family() != "w") {
            err << "error: no classified module family for algebra '" << A->name() << "'\n";
            throw InputError{kUsage};
        }
        RankOneParams p{*delta, *alpha, false, Rational(0)};
        if (auto beta = pin_of("beta")) {
            p.has_beta = true;
            p.beta = *beta;
        }
        return make_rank_one_w(A, p);
    }();

    auto verdict = is_irreducible(module, cap);

    json j;
    j["schema"] = 1;
    j["algebra"] = A->name();
    j["parameters"] = json::object();
    j["parameters"]["D"] = to_string(*delta);
    j["parameters"]["a"] = to_string(*alpha);
    if (auto beta = pin_of("beta"))
        j["parameters"]["beta"] = to_string(*beta);
    if (auto b = A->pinned("b"))
        j["parameters"]["b"] = to_string(*b);
    j["analytic_verdict"] = verdict.analytic ? "irreducible" : "reducible";
    j["search_verdict"] = verdict.search ? "irreducible" : "reducible";
    j["submodule_generators"] = json::array();
    for (const auto& f : verdict.submodule_generators)
        j["submodule_generators"].push_back(f.str());
    j["certificates"] = json::array();
    for (const auto& c : verdict.certificates) {
        json quotients = json::object();
        for (const auto& [g, q] : c.quotients)
            quotients[g] = q.str();
        j["certificates"].push_back({{"f", c.generator_poly.str()}, {"quotients", quotients}});
    }

    if (as_json) {
        out << j.dump(2) << "\n";
    } else {
        out << module.name() << ": " << (verdict.irreducible ? "irreducible" : "reducible")
            << "\n";
        for (const auto& f : verdict.submodule_generators)
            out << "  proper submodule generated by " << f.str() << "\n";
    }
    return kOk;
}

int cmd_jprod(const Selection& sel, const std::string& pair, int only_j, bool as_json,
              std::ostream& out, std::ostream& err) {
    const auto& A = *sel.algebra;
    std::vector<std::pair<GeneratorId, GeneratorId>> pairs;
    if (!pair.empty()) {
        auto comma = pair.find(',');
        if (comma == std::string::npos) {
            err << "error: --pair wants two generator names, e.g. --pair L,H\n";
            return kUsage;
        }
        auto a = A.find_generator(pair.substr(0, comma));
        auto b = A.find_generator(pair.substr(comma + 1));
        if (!a || !b) {
            err << "error: unknown generator in --pair '" << pair << "'\n";
            return kUsage;
        }
        pairs.emplace_back(*a, *b);
    } else {
        for (GeneratorId i = 0; i < A.rank(); ++i)
            for (GeneratorId j = 0; j < A.rank(); ++j)
                pairs.emplace_back(i, j);
    }

    json rows = json::array();
    for (auto [i, j] : pairs) {
        unsigned bound = locality_bound(A, i, j);
        for (unsigned n = 0; n < std::max(bound, 1u); ++n) {
            if (only_j >= 0 && n != static_cast<unsigned>(only_j))
                continue;
            auto p = j_product(A, A.generator(i), A.generator(j), n);
            std::string lhs =
                A.generator_name(i) + "_(" + std::to_string(n) + ")" + A.generator_name(j);
            if (as_json)
                rows.push_back({{"j", n},
                                {"lhs", lhs},
                                {"value", str(A, p)}});
            else
                out << lhs << " = " << str(A, p) << "\n";
        }
    }
    if (as_json)
        out << json{{"schema", 1}, {"algebra", A.name()}, {"products", rows}}.dump(2) << "\n";
    return kOk;
}

int cmd_fmt(const Selection& sel, std::ostream& out) {
    out << dsl::print(*sel.algebra, sel.modules);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lie conformal algebra workbench"};
    app.require_subcommand(1);

    std::string selector, file, format = "text", pins_text, pair;
    long N = 6;
    unsigned n_max = 8, cap = 4;
    int only_j = -1;
    bool verify = false, center = false, solvable = false;

    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--algebra", selector, "builtin name (vir, w:b, w:0, hv, w22, sv)");
        cmd->add_option("--file", file, "algebra definition file");
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* check = app.add_subcommand("check", "verify skew-symmetry, Jacobi and j-product axioms");
    add_source(check);
    check->add_option("-n,--n-max", n_max, "j-product axiom depth");

    auto* ann = app.add_subcommand("ann", "annihilation algebra tables and properties");
    add_source(ann);
    ann->add_option("-N,--trunc", N, "truncation / display-index bound")->required();
    ann->add_flag("--verify", verify, "compare against the closed-form presentation");
    ann->add_flag("--center", center, "test centrality of pa - L(-1)");
    ann->add_flag("--solvable", solvable, "derived series of the truncated quotient");

    auto* classify = app.add_subcommand("classify", "decide irreducibility of a rank-one module");
    add_source(classify);
    classify->add_option("--pin", pins_text, "parameter pins, e.g. D=0,a=1,beta=2")->required();
    classify->add_option("--cap", cap, "submodule search degree cap");

    auto* jprod = app.add_subcommand("jprod", "list j-products of generator pairs");
    add_source(jprod);
    jprod->add_option("--pair", pair, "one ordered pair, e.g. L,H");
    jprod->add_option("-j", only_j, "only this j");

    auto* fmt = app.add_subcommand("fmt", "normalize a definition file");
    add_source(fmt);

    std::vector<const char*> argv;
    argv.push_back("lieconf");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream dummy;
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    bool as_json = format == "json";
    try {
        if (selector.empty() && file.empty()) {
            err << "error: pick an algebra with --algebra or --file\n";
            return kUsage;
        }
        Selection sel = select_algebra(selector, file, as_json, out, err);
        if (check->parsed())
            return cmd_check(sel, n_max, as_json, out);
        if (ann->parsed())
            return cmd_ann(sel, N, verify, center, solvable, as_json, out, err);
        if (classify->parsed())
            return cmd_classify(sel, parse_pins(pins_text, err), cap, as_json, out, err);
        if (jprod->parsed())
            return cmd_jprod(sel, pair, only_j, as_json, out, err);
        if (fmt->parsed())
            return cmd_fmt(sel, out);
        err << "error: no command\n";
        return kUsage;
    } catch (const InputError& e) {
        return e.code;
    } catch (const InconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace lieconf::cli
