// Acceptance gate: runs every check in the verification catalogue and exits
// nonzero if any fails.  Two trajectory-mapping checks fail by design of the
// pinned instances themselves (their exact solutions leave the trustworthy
// integration regime long before the requested horizon; see the FAIL detail
// strings), so a fresh build reports exactly those two.
#include "lienard/acceptance.hpp"

#include <cstring>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::string filter;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--filter") == 0 && i + 1 < argc) {
            filter = argv[++i];
        } else {
            std::cerr << "usage: acceptance_gate [--filter SUBSTRING]\n";
            return 2;
        }
    }
    const auto results = lienard::run_acceptance(filter, std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << " passed, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}
