// Acceptance gate: one line per criterion, exit 0 iff all pass.
// FLAGGED means a pass with documented golden-file discrepancies (printed
// as PASS* below); any FAIL makes the binary exit nonzero.
#include <cstdio>
#include <string>
#include <vector>

#include "core/verify.h"

int main() {
    using namespace coops;
    const std::string data = COOPS_DATA_DIR;

    std::vector<CheckLine> results;
    results.push_back(criterion_hopf());
    results.push_back(criterion_margolis());
    results.push_back(criterion_splitting());
    results.push_back(criterion_sequences());
    results.push_back(criterion_dual_engine());
    results.push_back(criterion_evenness());
    results.push_back(criterion_localized());
    results.push_back(criterion_tables(data));
    results.push_back(criterion_relations());

    bool ok = true;
    for (size_t i = 0; i < results.size(); ++i) {
        const CheckLine& l = results[i];
        bool pass = l.status != CheckLine::FAIL;
        ok = ok && pass;
        std::printf("%s criterion %zu: %s (%.1fs) %s\n",
                    !pass ? "FAIL" : l.status == CheckLine::FLAGGED ? "PASS*" : "PASS", i + 1,
                    l.name.c_str(), l.seconds, l.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", ok ? "ACCEPTANCE: all 9 criteria pass"
                           : "ACCEPTANCE: at least one criterion failed");
    return ok ? 0 : 1;
}
