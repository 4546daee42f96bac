#pragma once

#include <string>
#include <vector>

#include "sawmw/device.hpp"

namespace sawmw {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string expected;
    std::string got;
    std::string tolerance;
    bool pass = false;
    std::string note;

    std::string line() const;  // "PASS  3  conversion peak factor  ..."
};

/// Runs the full release-gate suite against a device config. scratch_dir is
/// used for the determinism check (two scenario runs are diffed there).
std::vector<CriterionResult> run_acceptance(const DeviceConfig& cfg,
                                            const std::string& scratch_dir);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace sawmw
