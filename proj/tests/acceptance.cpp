// One line per acceptance criterion; exit status 1 if any fails.
#include "wf/suite.hpp"

#include <cstdio>

int main() {
    wf::Straightener st;
    int failed = 0;
    for (int id = 1; id <= wf::kCriteria; ++id) {
        const auto c = wf::run_criterion(id, st);
        std::printf("%s\n", c.line().c_str());
        std::fflush(stdout);
        failed += !c.pass;
    }
    std::printf("%d/%d criteria passed\n", wf::kCriteria - failed, wf::kCriteria);
    return failed ? 1 : 0;
}
