// fuzz.hpp -- randomized cross-validation: seeded corpora of small
// automata run through every procedure, checking method agreement, the
// naive oracles, the structural lifting properties and the legacy
// restriction. Reports are byte-reproducible for a fixed seed.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdet/core.hpp"
#include "spdet/generator.hpp"

namespace spdet {

/// Derives the configuration of corpus case `index`. State counts cycle
/// through 1..max_states, the silent fraction through {0, 0.3, 0.6}.
GenConfig corpus_config(std::uint64_t master_seed, std::uint32_t index,
                        std::uint32_t max_states);

/// A small seeded pair specification over the automaton's states.
SpecPairs corpus_spec_pairs(const Fsa& fsa, std::uint64_t seed);

struct FuzzOptions {
    std::uint32_t count = 100;
    std::uint64_t seed = 1;
    std::uint32_t max_states = 6;
};

struct FuzzReport {
    FuzzOptions options;
    std::uint32_t cases = 0;
    std::vector<std::string> discrepancies;

    bool clean() const { return discrepancies.empty(); }
    std::string to_text() const;
};

/// Runs every agreement suite on one automaton; empty result means all
/// checks passed.
std::vector<std::string> cross_validate(const Fsa& fsa, const SpecPairs& spec);

FuzzReport run_fuzz_suite(const FuzzOptions& options);

}  // namespace spdet
