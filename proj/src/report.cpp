#include "lieconf/report.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace lieconf {

std::string to_text(const CheckReport& report) {
    std::ostringstream out;
    out << "check " << report.check << " [" << report.subject << "]: "
        << (report.pass() ? "PASS" : "FAIL");
    if (!report.pass()) {
        out << " (" << report.witnesses.size() << " witnesses)";
        for (const auto& w : report.witnesses)
            out << "\n  " << w.site << ": residual = " << w.residual.str();
    }
    return out.str();
}

std::string to_json_string(const CheckReport& report) {
    nlohmann::json j;
    j["check"] = report.check;
    j["subject"] = report.subject;
    j["verdict"] = report.pass() ? "pass" : "fail";
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : report.witnesses)
        j["witnesses"].push_back({{"site", w.site}, {"residual", w.residual.str()}});
    return j.dump();
}

} // namespace lieconf
