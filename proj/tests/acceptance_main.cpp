// Acceptance suite: runs every criterion and prints one pass/fail line each.
#include "mfk/acceptance.hpp"

#include <cstdio>

int main() {
    using namespace mfk;
    auto results = acceptance::run_all(default_data_dir());
    bool all = true;
    for (const auto& r : results) {
        double budget = acceptance::time_budget(r.id);
        bool in_budget = budget == 0 || r.seconds <= budget;
        bool pass = r.pass && in_budget;
        all = all && pass;
        std::printf("criterion %2d: %s  [%.2fs%s]  %s%s%s\n", r.id, pass ? "PASS" : "FAIL", r.seconds,
                    budget > 0 ? ("/" + std::to_string(static_cast<int>(budget)) + "s").c_str() : "",
                    r.title.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
