// props.hpp -- exhaustive checkers for the structural lifting properties
// connecting observer, detector and extended self-composition. They test
// proved facts: a counterexample indicates an implementation bug.

#pragma once

#include <string>

#include "spdet/core.hpp"

namespace spdet {

struct PropCheckResult {
    bool ok = true;
    std::string counterexample;  // empty when ok

    explicit operator bool() const { return ok; }
};

/// Every observer step can be shadowed by a detector step between
/// restricted nodes: for each observer edge (q, s, q') and each subset of
/// q' of cardinality min(2,|q'|) there is a subset of q of cardinality
/// min(2,|q|) stepping to it under s. Throws TooLarge beyond eight states.
PropCheckResult check_prop5(const Fsa& fsa);

/// Detector steps lift to label-matching observable paths in the extended
/// self-composition, and composition runs project into observer runs
/// (checked over all runs with at most six observable steps). Throws
/// TooLarge beyond eight states.
PropCheckResult check_prop8(const Fsa& fsa);

}  // namespace spdet
