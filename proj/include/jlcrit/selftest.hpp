#pragma once

// Acceptance checks, shared by `jlcrit selftest` and the acceptance test.

#include <filesystem>
#include <string>
#include <vector>

#include "jlcrit/criticality.hpp"

namespace jlcrit {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  ///< measured values against the pinned tolerance
    double seconds = 0.0;
};

struct SelftestOptions {
    double tol = kDefaultTol;  ///< classification band used by the label checks
    std::filesystem::path scratch_dir;  ///< empty: system temp directory
    unsigned threads = 0;
};

std::vector<CheckResult> run_selftest(const SelftestOptions& opts = {});

/// "PASS  3 name: detail" / "FAIL ..."
std::string format_check(const CheckResult& r);

}  // namespace jlcrit
