#pragma once

#include <string>
#include <vector>

namespace soc1d::invariants {

struct Options {
    // Fault injection: perturbs one checker-side cubic coefficient by this
    // fraction of max|coeff|; a nonzero value must trip the suite.
    double cubic_fault = 0.0;
    bool with_oracle = true;  // include the (slower) grid cross-check
};

struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<Item> items;
    bool pass = true;
};

// Runs every module invariant at gamma=-1, eta=0.6 over the canonical Raman
// couplings {0.1, 0.36, 0.5, 0.61, 1.0, 1.32}.
Report run(const Options& opt);

}  // namespace soc1d::invariants
