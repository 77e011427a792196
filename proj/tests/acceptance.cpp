// Acceptance run: one PASS/FAIL line per criterion; nonzero exit on failure.

#include <cstdio>

#include "jlcrit/selftest.hpp"

int main() {
    const auto results = jlcrit::run_selftest();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s\n", jlcrit::format_check(r).c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
