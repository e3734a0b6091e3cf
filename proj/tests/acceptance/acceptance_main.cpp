// One line per acceptance criterion; exit status 0 iff all pass.

#include "tritter/verify.hpp"

#include <iostream>

int main() {
    const auto report = tritter::run_acceptance();
    for (const auto& c : report.criteria) {
        std::cout << tritter::summary_line(c) << '\n';
        for (const auto& note : c.notes) std::cout << "       " << note << '\n';
    }
    std::cout << (report.all_pass() ? "all criteria pass" : "some criteria FAIL") << '\n';
    return report.all_pass() ? 0 : 1;
}
