// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed in the suites.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "qherm/verify.hpp"

using namespace qherm;

namespace {

const std::map<unsigned, std::string> titles{
    {1, "complex orthogonality under nu_s"},
    {2, "quaternionic orthogonality of H_n^s"},
    {3, "two-index norms and cross-orthogonality"},
    {4, "exact Landau eigenvalues"},
    {5, "kernel closed forms and diagonal structure"},
    {6, "canonical kernel diagonal"},
    {7, "coherent-state normalization and resolution of identity"},
    {8, "Cullen derivative and residual order"},
    {9, "regular/anti-regular structure"},
    {10, "slice splitting"},
    {11, "recursions, generating function, confluent form"},
    {12, "SU(2) decomposition and Haar integral"},
};

} // namespace

int main() {
    const VerifyConfig cfg;  // defaults only
    std::map<unsigned, std::vector<Check>> by_criterion;
    std::map<unsigned, std::string> errors;
    std::string convention = "?";

    for (const auto& suite : suites()) {
        try {
            const SuiteResult r = suite.run(cfg);
            for (const Check& c : r.checks) by_criterion[c.criterion].push_back(c);
            if (suite.name == "orthogonality") convention = r.details["complex"]["convention"].get<std::string>();
        } catch (const std::exception& e) {
            for (unsigned c : suite.criteria) errors[c] = e.what();
        }
    }

    int failed = 0;
    for (const auto& [id, title] : titles) {
        const auto& checks = by_criterion[id];
        bool pass = !checks.empty() && !errors.count(id);
        for (const Check& c : checks) pass = pass && c.pass;
        failed += pass ? 0 : 1;
        std::printf("criterion %2u %s  %s\n", id, pass ? "PASS" : "FAIL", title.c_str());
        for (const Check& c : checks) {
            std::printf("    %-32s %.3e <= %.1e %s\n", c.name.c_str(), c.value, c.tolerance, c.pass ? "ok" : "FAILED");
        }
        if (id == 1) std::printf("    diagonal convention: %s\n", convention.c_str());
        if (errors.count(id)) std::printf("    error: %s\n", errors[id].c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(titles.size()) - failed, titles.size());
    return failed == 0 ? 0 : 1;
}
