// constructions.hpp -- the derived automata driving verification: the
// deterministic subset observer, the cardinality-two detector, and the
// (epsilon-extended) self-composition over state pairs. All builders
// materialize only the part reachable from the initial states.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdet/core.hpp"
#include "spdet/graph.hpp"

namespace spdet {

inline constexpr std::size_t kDefaultObserverNodeBudget = 100000;

/// Raised when a subset construction would exceed its node budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t built, std::size_t budget)
        : std::runtime_error("observer node budget exceeded"),
          nodes_built(built),
          budget(budget) {}

    std::size_t nodes_built;
    std::size_t budget;
};

/// Deterministic estimate automaton: nodes are nonempty state sets, the
/// successor of a node under a symbol is the silent closure of its
/// observable reach. Node 0 is the initial estimate. An automaton with no
/// initial states yields an empty observer.
struct Observer {
    std::vector<StateSet> nodes;
    std::vector<std::vector<std::int64_t>> next;  // next[node][symbol], -1 if none

    bool empty() const { return nodes.empty(); }
    std::optional<std::uint32_t> initial() const {
        if (nodes.empty()) return std::nullopt;
        return 0u;
    }
};

Observer build_observer(const Fsa& fsa, std::size_t max_nodes = kDefaultObserverNodeBudget);

/// Nondeterministic split of the observer: every non-initial node has one
/// or two states. The initial node is the full initial estimate, kept
/// verbatim whatever its cardinality.
struct Detector {
    struct Edge {
        std::uint32_t from;
        SymbolId symbol;
        std::uint32_t to;
    };

    std::vector<StateSet> nodes;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<SymbolId, std::uint32_t>>> next;

    bool empty() const { return nodes.empty(); }
    std::optional<std::uint32_t> initial() const {
        if (nodes.empty()) return std::nullopt;
        return 0u;
    }
};

Detector build_detector(const Fsa& fsa);

struct StatePair {
    StateId left;
    StateId right;

    bool diagonal() const { return left == right; }
    StatePair swapped() const { return {right, left}; }
    friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

enum class PairEventKind { ObsPair, SilentLeft, SilentRight, EpsLink };

/// Event of the pair automaton. ObsPair moves both components on equally
/// labeled observable events; SilentLeft/SilentRight move one component on
/// a silent event; EpsLink is the added silent edge from an off-diagonal
/// pair to one of its diagonals.
struct PairEvent {
    PairEventKind kind;
    EventId left_event = 0;   // ObsPair, SilentLeft
    EventId right_event = 0;  // ObsPair, SilentRight
    SymbolId symbol = 0;      // ObsPair only

    bool silent() const { return kind != PairEventKind::ObsPair; }
};

struct CompositionAutomaton {
    struct Edge {
        std::uint32_t from;
        PairEvent event;
        std::uint32_t to;
    };

    std::vector<StatePair> nodes;          // reachable pairs, search order
    std::vector<std::uint32_t> initial;    // node ids of X0 x X0
    std::vector<Edge> edges;
    std::vector<std::vector<std::uint32_t>> out_edges;  // edge indices per node
    bool epsilon_extended = false;

    std::optional<std::uint32_t> node_index(StatePair p) const {
        auto it = index.find(p);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    std::map<StatePair, std::uint32_t> index;
};

/// The synchronous product of the automaton with itself: pairs of runs
/// producing the same output sequence.
CompositionAutomaton build_self_composition(const Fsa& fsa);

/// Adds the silent collapse edges: an off-diagonal pair (x,y) gets an edge
/// to the diagonal (x,x) when some observable step of (x,x) cannot be
/// matched by (x,y) with the same label and target pair, and symmetrically
/// for (y,y). Applied to fixpoint over reachable off-diagonal pairs;
/// targets are materialized on demand.
CompositionAutomaton extend_epsilon(const CompositionAutomaton& cc, const Fsa& fsa);

/// Off-diagonal reachability skeleton of an extended composition: an edge
/// u -> v means v is reachable from u by one observable pair step wrapped
/// in silent closures. Edge labels carry the observable symbol.
struct ObservableStepGraph {
    DiGraph graph;
    std::vector<std::uint32_t> cc_node;  // graph node -> composition node
};

ObservableStepGraph one_observable_step_graph(const CompositionAutomaton& cc);

/// Renders a pair like "(x1,x2)" using state names.
std::string format_state_pair(const Fsa& fsa, StatePair p);

/// Renders a pair event like "(t1,t2)", "(t4,eps)" or "eps".
std::string format_pair_event(const Fsa& fsa, const PairEvent& ev);

}  // namespace spdet
