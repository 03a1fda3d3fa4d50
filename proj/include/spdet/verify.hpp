// verify.hpp -- decision procedures for strong periodic detectability and
// strong periodic D-detectability, with and without the classical
// deadlock/divergence assumptions, plus witness extraction.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdet/constructions.hpp"
#include "spdet/core.hpp"

namespace spdet {

enum class PropertyKind { Spd, Spdd, Sd };
enum class MethodKind { Observer, Detector, CcEpsilon, LegacyDetector, LegacyObserver };
enum class Outcome { Holds, Fails, Unknown };

std::string to_string(PropertyKind p);
std::string to_string(MethodKind m);
std::string to_string(Outcome o);

/// A closed walk through a construction. node_ids index into the
/// construction the verdict was computed on; names and symbols are
/// rendered for reporting. Edge i goes from nodes[i] to nodes[(i+1)%k].
struct CycleWitness {
    std::vector<std::uint32_t> node_ids;
    std::vector<std::string> nodes;
    std::vector<SymbolId> symbol_ids;
    std::vector<std::string> symbols;
};

/// A reachable estimate (or pair) containing a state that can diverge,
/// together with the silent lasso that proves the divergence.
struct DivergenceWitness {
    std::uint32_t node_id = 0;
    std::string node;
    StateId state_id = 0;
    std::string state;
    SilentLasso lasso;
};

struct Condition {
    std::string id;
    std::string description;
    bool fired = false;
    std::optional<DivergenceWitness> divergence;
    std::optional<CycleWitness> cycle;
};

struct VerdictStats {
    std::size_t nodes_built = 0;
    double milliseconds = 0.0;
    bool vacuous = false;  // the system generates no infinite run
};

struct Verdict {
    PropertyKind property;
    MethodKind method;
    Outcome outcome = Outcome::Unknown;
    std::vector<Condition> conditions;
    VerdictStats stats;
    std::optional<Assumption1Report> assumption1;  // carried by legacy methods

    bool holds() const { return outcome == Outcome::Holds; }
};

/// Strong periodic detectability via the subset observer. Exponential in
/// the worst case; Unknown when the node budget is exhausted.
Verdict check_spd_observer(const Fsa& fsa,
                           std::size_t max_nodes = kDefaultObserverNodeBudget);

/// Strong periodic detectability via the detector. Polynomial.
Verdict check_spd_detector(const Fsa& fsa);

/// Strong periodic detectability via the epsilon-extended self-composition.
/// Polynomial.
Verdict check_spd_cc(const Fsa& fsa);

/// Strong periodic D-detectability via the observer.
Verdict check_spdd_observer(const Fsa& fsa, const SpecPairs& spec,
                            std::size_t max_nodes = kDefaultObserverNodeBudget);

/// Classical detector check for strong periodic detectability. Sound only
/// for deadlock-free, divergence-free automata; the verdict carries the
/// assumption diagnostics.
Verdict legacy_check_spd_detector(const Fsa& fsa);

/// Classical observer check for strong periodic D-detectability; same
/// caveat as the legacy detector check.
Verdict legacy_check_spdd_observer(const Fsa& fsa, const SpecPairs& spec,
                                   std::size_t max_nodes = kDefaultObserverNodeBudget);

/// Classical detector check for strong detectability: every node reachable
/// from a reachable cycle must be a singleton.
Verdict legacy_check_sd_detector(const Fsa& fsa);

}  // namespace spdet
