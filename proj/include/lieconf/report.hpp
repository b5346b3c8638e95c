#pragma once

#include "lieconf/poly.hpp"

#include <string>
#include <vector>

namespace lieconf {

/// One non-vanishing residual from a verification run: the site names the
/// generator pair/triple (and the basis coordinate) it came from.
struct CheckWitness {
    std::string site;
    ExactPoly residual;
};

struct CheckReport {
    std::string check;   // "skew", "jacobi", "module-axioms", ...
    std::string subject; // algebra or module name
    std::vector<CheckWitness> witnesses;

    bool pass() const { return witnesses.empty(); }
    void add(std::string site, ExactPoly residual) {
        witnesses.push_back({std::move(site), std::move(residual)});
    }
};

std::string to_text(const CheckReport& report);
/// Serialized JSON object {"check","subject","verdict","witnesses":[...]}.
std::string to_json_string(const CheckReport& report);

} // namespace lieconf
