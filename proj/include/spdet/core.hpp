// core.hpp -- partially observed automaton model and state-estimation
// primitives: unobservable/observable reach, current-state estimates,
// divergence and deadlock diagnostics.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spdet {

using StateId = std::uint32_t;
using EventId = std::uint32_t;
using SymbolId = std::uint32_t;

/// Output label of an event: either a symbol of the output alphabet or
/// silent (the event is unobservable).
class Label {
public:
    static Label silent() { return Label(-1); }
    static Label symbol(SymbolId s) { return Label(static_cast<std::int64_t>(s)); }

    bool is_silent() const { return code_ < 0; }
    SymbolId symbol_id() const {
        if (is_silent()) throw std::logic_error("silent label has no symbol");
        return static_cast<SymbolId>(code_);
    }

    friend bool operator==(const Label&, const Label&) = default;

private:
    explicit Label(std::int64_t code) : code_(code) {}
    std::int64_t code_;
};

/// Canonical set of states: a sorted, duplicate-free index sequence.
/// Two sets are equal iff their sequences are identical, so StateSet is
/// directly usable as a map key for subset constructions.
class StateSet {
public:
    StateSet() = default;
    static StateSet from_unsorted(std::vector<StateId> xs);
    static StateSet single(StateId x) { return from_unsorted({x}); }

    bool contains(StateId x) const;
    bool intersects(const StateSet& other) const;
    bool is_subset_of(const StateSet& other) const;

    void insert(StateId x);

    std::size_t size() const { return xs_.size(); }
    bool empty() const { return xs_.empty(); }
    StateId operator[](std::size_t i) const { return xs_[i]; }

    auto begin() const { return xs_.begin(); }
    auto end() const { return xs_.end(); }
    const std::vector<StateId>& values() const { return xs_; }

    friend auto operator<=>(const StateSet&, const StateSet&) = default;

private:
    std::vector<StateId> xs_;
};

struct Transition {
    StateId src;
    EventId event;
    StateId dst;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Observable out-edge of a state, precomputed for estimate updates.
struct ObsEdge {
    EventId event;
    SymbolId symbol;
    StateId dst;
};

class FsaBuilder;

/// A partially observed, possibly nondeterministic finite-state automaton
/// with multiple initial states. Immutable once built; all operations on
/// it are pure functions, safe for concurrent use.
class Fsa {
public:
    Fsa() = default;  // the empty automaton

    std::size_t state_count() const { return state_names_.size(); }
    std::size_t event_count() const { return event_names_.size(); }
    std::size_t symbol_count() const { return symbol_names_.size(); }

    const std::string& state_name(StateId x) const { return state_names_.at(x); }
    const std::string& event_name(EventId t) const { return event_names_.at(t); }
    const std::string& symbol_name(SymbolId s) const { return symbol_names_.at(s); }

    std::optional<StateId> state_by_name(const std::string& name) const;
    std::optional<EventId> event_by_name(const std::string& name) const;
    std::optional<SymbolId> symbol_by_name(const std::string& name) const;

    Label event_label(EventId t) const { return event_labels_.at(t); }

    const StateSet& initial() const { return initial_; }
    std::span<const Transition> transitions() const { return transitions_; }

    std::span<const std::pair<EventId, StateId>> silent_out(StateId x) const {
        return silent_out_.at(x);
    }
    std::span<const ObsEdge> observable_out(StateId x) const { return obs_out_.at(x); }
    bool has_outgoing(StateId x) const {
        return !silent_out_.at(x).empty() || !obs_out_.at(x).empty();
    }

    bool operator==(const Fsa& other) const;

private:
    friend class FsaBuilder;

    std::vector<std::string> state_names_;
    std::vector<std::string> event_names_;
    std::vector<Label> event_labels_;
    std::vector<std::string> symbol_names_;
    StateSet initial_;
    std::vector<Transition> transitions_;

    std::vector<std::vector<std::pair<EventId, StateId>>> silent_out_;
    std::vector<std::vector<ObsEdge>> obs_out_;
};

/// Incremental construction with name interning and validation. Duplicate
/// declarations and duplicate transition triples are rejected rather than
/// merged silently.
class FsaBuilder {
public:
    FsaBuilder& states(std::initializer_list<const char*> names);
    StateId add_state(const std::string& name);

    /// Declares a silent (unobservable) event.
    FsaBuilder& event(const std::string& name);
    /// Declares an event labeled with the given output symbol.
    FsaBuilder& event(const std::string& name, const std::string& symbol);
    EventId add_event(const std::string& name, std::optional<std::string> symbol);

    FsaBuilder& initial(std::initializer_list<const char*> names);
    FsaBuilder& add_initial(const std::string& name);

    FsaBuilder& trans(const std::string& src, const std::string& event,
                      const std::string& dst);

    Fsa build();

private:
    StateId require_state(const std::string& name) const;
    EventId require_event(const std::string& name) const;

    Fsa fsa_;
};

/// Ordered pairs of states that an estimate must never jointly contain.
/// Kept sorted and duplicate-free; no symmetric closure is applied.
using SpecPairs = std::vector<std::pair<StateId, StateId>>;

SpecPairs normalize_spec_pairs(SpecPairs pairs);

/// All states reachable from `from` via zero or more silent transitions.
/// Monotone, extensive and idempotent.
StateSet unobservable_reach(const Fsa& fsa, const StateSet& from);

/// All states reachable from `from` by exactly one transition whose label
/// is `symbol`. Throws std::invalid_argument for an undeclared symbol.
StateSet observable_reach(const Fsa& fsa, const StateSet& from, SymbolId symbol);

/// The set of states the system can occupy after the given output
/// sequence has been observed. An empty result means the sequence cannot
/// be produced.
StateSet current_state_estimate(const Fsa& fsa, std::span<const SymbolId> observation);

/// States admitting an infinite run of silent transitions: everything
/// that can silently reach a silent cycle.
StateSet divergent_states(const Fsa& fsa);

/// Forward closure of the initial states over all transitions.
StateSet reachable_states(const Fsa& fsa);

struct Assumption1Report {
    bool deadlock_free = true;
    std::optional<StateId> deadlock_witness;     // reachable state, no out-edge
    bool divergence_free = true;
    std::vector<StateId> divergence_cycle;       // reachable silent cycle
};

/// Diagnoses deadlock-freeness (every reachable state has an outgoing
/// transition) and divergence-freeness (no reachable silent cycle).
Assumption1Report check_assumption1(const Fsa& fsa);

/// A silent stem from some state into a silent cycle. `stem` starts at
/// the origin and ends at the cycle entry; `cycle` lists the cycle nodes
/// once, starting at the entry.
struct SilentLasso {
    std::vector<StateId> stem;
    std::vector<StateId> cycle;
};

/// Extracts a silent lasso witnessing divergence of `x`, if one exists.
std::optional<SilentLasso> silent_lasso_from(const Fsa& fsa, StateId x);

/// Renders a StateSet like "{x1,x2}" using state names.
std::string format_state_set(const Fsa& fsa, const StateSet& q);

}  // namespace spdet
