// naive.hpp -- deliberately brute-force checkers used to cross-validate
// the production procedures. These enumerate estimates by recomputing each
// one from the raw automaton; they share nothing with the subset and pair
// constructions.

#pragma once

#include <stdexcept>

#include "spdet/core.hpp"

namespace spdet {

/// Guard for the exhaustive checkers: they refuse automata with more than
/// eight states.
class TooLarge : public std::runtime_error {
public:
    explicit TooLarge(std::size_t states)
        : std::runtime_error("automaton too large for exhaustive checking"),
          state_count(states) {}

    std::size_t state_count;
};

struct NaiveResult {
    bool property_holds = true;
    bool cond1 = false;  // persistent ambiguity sustained by silent divergence
    bool cond2 = false;  // persistent ambiguity sustained by an output cycle
};

/// Exhaustive strong-periodic-detectability check. Throws TooLarge beyond
/// eight states.
NaiveResult naive_spd(const Fsa& fsa);

/// Exhaustive strong-periodic-D-detectability check against the given
/// pair specification.
NaiveResult naive_spdd(const Fsa& fsa, const SpecPairs& spec);

}  // namespace spdet
