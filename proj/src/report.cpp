#include "pk/report.hpp"

namespace pk {

std::string ord_string(int ord_pi, u32 p) {
    if (ord_pi == ORD_INF) return "inf";
    return std::to_string(ord_pi) + "/" + std::to_string(p - 1);
}

json check_to_json(const CheckRecord& c) {
    json j;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["status"] = c.pass ? "pass" : "fail";
    if (c.residual_ord != ORD_INF)
        j["residual_ord_pi"] = c.residual_ord;
    else
        j["residual_ord_pi"] = "inf";
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

json VerificationReport::to_json() const {
    json j;
    j["job"] = job;
    j["checks"] = json::array();
    for (auto& c : checks) j["checks"].push_back(check_to_json(c));
    j["all_pass"] = all_pass();
    j["timings"] = {{"seconds", seconds}};
    return j;
}

}  // namespace pk
