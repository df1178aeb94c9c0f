#pragma once

// Machine-readable verification reports: deterministic JSON, one record per
// check with its anchor tag and residual order; timings live outside the
// digested payload.

#include <json.hpp>

#include "pk/dwork.hpp"

namespace pk {

using json = nlohmann::json;

json check_to_json(const CheckRecord& c);

struct VerificationReport {
    json job;
    std::vector<CheckRecord> checks;
    double seconds = 0;

    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    json to_json() const;
};

std::string ord_string(int ord_pi, u32 p);  // "inf" or "a/(p-1)"

}  // namespace pk
