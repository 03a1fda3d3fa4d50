// generator.hpp -- seeded random automaton generation for cross-validation
// suites. Identical config and seed reproduce the identical automaton.

#pragma once

#include <cstdint>

#include "spdet/core.hpp"

namespace spdet {

struct GenConfig {
    std::uint32_t states = 0;
    std::uint32_t events = 0;
    double silent_fraction = 0.0;  // probability that an event is silent
    double density = 0.0;          // expected out-degree per state
    std::uint32_t initial_count = 0;
    std::uint64_t seed = 0;
};

/// Draws a pseudo-random automaton honoring the config. State names are
/// x0..x{n-1}, event names t0.., output symbols single letters. The draw
/// is a pure function of the config, bit-for-bit.
Fsa random_fsa(const GenConfig& cfg);

}  // namespace spdet
