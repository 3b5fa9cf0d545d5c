#pragma once

#include <cstdint>

namespace cf3 {

// Process-wide run configuration.  All numerical enclosures and enumeration
// guards read from this; the CLI populates it from flags before dispatching.
// Identical configs must produce byte-identical outputs, so nothing here may
// be time- or address-dependent.
struct run_config {
    long precision_bits = 128; // working precision for directed-rounding enclosures
    long depth = -1;           // generic deepening bound; -1 = operation default
    long cap = 100000;         // enumeration cap (words, intervals, branches)
    long workers = 1;          // accepted for interface stability; evaluation is
                               // deterministic and independent of this value
    std::uint64_t seed = 0;    // seed for randomized oracles; must be explicit there
    bool seed_set = false;
};

run_config& config();

} // namespace cf3
