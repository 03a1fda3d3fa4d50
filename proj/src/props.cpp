#include "spdet/props.hpp"

#include <deque>
#include <sstream>
#include <unordered_set>

#include "spdet/constructions.hpp"
#include "spdet/naive.hpp"

namespace spdet {

namespace {

constexpr std::size_t kMaxStates = 8;
constexpr int kMaxObservableSteps = 6;

// The detector transition relation recomputed from the reach primitives.
bool is_detector_step(const Fsa& fsa, const StateSet& from, SymbolId symbol,
                      const StateSet& to) {
    StateSet reach = unobservable_reach(fsa, observable_reach(fsa, from, symbol));
    if (reach.size() > 1) return to.size() == 2 && to.is_subset_of(reach);
    return to == reach && !to.empty();
}

std::vector<StateSet> subsets_of_cardinality(const StateSet& q, std::size_t k) {
    std::vector<StateSet> out;
    if (k == 1) {
        for (StateId x : q) out.push_back(StateSet::single(x));
    } else if (k == 2) {
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j)
                out.push_back(StateSet::from_unsorted({q[i], q[j]}));
    }
    return out;
}

std::uint8_t pair_mask(StatePair p) {
    return static_cast<std::uint8_t>((1u << p.left) | (1u << p.right));
}

bool mask_within(std::uint8_t mask, const StateSet& q) {
    std::uint8_t qmask = 0;
    for (StateId x : q) qmask |= static_cast<std::uint8_t>(1u << x);
    return (mask & ~qmask) == 0;
}

// Searches the extended composition for a path from `src` to one of
// `targets` whose label is exactly the single symbol `symbol`.
bool labeled_path_exists(const CompositionAutomaton& cc, std::uint32_t src,
                         SymbolId symbol, const std::vector<std::uint32_t>& targets) {
    std::vector<char> seen(cc.nodes.size() * 2, 0);
    std::deque<std::pair<std::uint32_t, int>> work;
    work.emplace_back(src, 0);
    seen[src * 2] = 1;
    while (!work.empty()) {
        auto [v, phase] = work.front();
        work.pop_front();
        if (phase == 1)
            for (std::uint32_t t : targets)
                if (t == v) return true;
        for (std::uint32_t ei : cc.out_edges[v]) {
            const auto& e = cc.edges[ei];
            int next_phase;
            if (e.event.silent()) {
                next_phase = phase;
            } else {
                if (phase == 1 || e.event.symbol != symbol) continue;
                next_phase = 1;
            }
            if (!seen[e.to * 2 + next_phase]) {
                seen[e.to * 2 + next_phase] = 1;
                work.emplace_back(e.to, next_phase);
            }
        }
    }
    return false;
}

}  // namespace

PropCheckResult check_prop5(const Fsa& fsa) {
    if (fsa.state_count() > kMaxStates) throw TooLarge(fsa.state_count());
    Observer obs = build_observer(fsa);

    for (std::uint32_t v = 0; v < obs.nodes.size(); ++v) {
        for (SymbolId s = 0; s < fsa.symbol_count(); ++s) {
            if (obs.next[v][s] < 0) continue;
            const StateSet& q = obs.nodes[v];
            const StateSet& q2 = obs.nodes[static_cast<std::uint32_t>(obs.next[v][s])];
            std::size_t to_card = std::min<std::size_t>(2, q2.size());
            std::size_t from_card = std::min<std::size_t>(2, q.size());
            for (const StateSet& target : subsets_of_cardinality(q2, to_card)) {
                bool lifted = false;
                for (const StateSet& source : subsets_of_cardinality(q, from_card))
                    if (is_detector_step(fsa, source, s, target)) { lifted = true; break; }
                if (!lifted) {
                    std::ostringstream os;
                    os << "observer edge " << format_state_set(fsa, q) << " -"
                       << fsa.symbol_name(s) << "-> " << format_state_set(fsa, q2)
                       << " has no detector step onto " << format_state_set(fsa, target);
                    return {false, os.str()};
                }
            }
        }
    }
    return {};
}

PropCheckResult check_prop8(const Fsa& fsa) {
    if (fsa.state_count() > kMaxStates) throw TooLarge(fsa.state_count());

    Detector det = build_detector(fsa);
    CompositionAutomaton cc = extend_epsilon(build_self_composition(fsa), fsa);

    // Every one- or two-state detector step must lift to a label-matching
    // observable path between the corresponding pairs (the two-to-two case
    // may land on the swapped pair).
    for (const auto& edge : det.edges) {
        const StateSet& q = det.nodes[edge.from];
        const StateSet& q2 = det.nodes[edge.to];
        if (q.size() > 2) continue;  // the wide initial node matches no case

        StatePair src =
            q.size() == 2 ? StatePair{q[0], q[1]} : StatePair{q[0], q[0]};
        std::vector<StatePair> target_pairs;
        if (q2.size() == 2)
            target_pairs = {StatePair{q2[0], q2[1]}, StatePair{q2[1], q2[0]}};
        else
            target_pairs = {StatePair{q2[0], q2[0]}};

        auto describe = [&](const char* what) {
            std::ostringstream os;
            os << "detector edge " << format_state_set(fsa, q) << " -"
               << fsa.symbol_name(edge.symbol) << "-> " << format_state_set(fsa, q2)
               << ": " << what;
            return os.str();
        };

        auto src_id = cc.node_index(src);
        if (!src_id) return {false, describe("source pair not reachable")};
        std::vector<std::uint32_t> target_ids;
        for (StatePair p : target_pairs)
            if (auto id = cc.node_index(p)) target_ids.push_back(*id);
        if (target_ids.empty() ||
            !labeled_path_exists(cc, *src_id, edge.symbol, target_ids))
            return {false, describe("no label-matching observable path")};
    }

    // Projection: along every composition run, the states touched between
    // observable steps stay inside the observer node reached by the same
    // output sequence.
    if (!cc.nodes.empty()) {
        Observer obs = build_observer(fsa);
        // state key: cc node | observer node | union mask | depth
        auto key = [](std::uint32_t node, std::uint32_t obs_node, std::uint8_t mask,
                      int depth) {
            return (static_cast<std::uint64_t>(node) << 40) |
                   (static_cast<std::uint64_t>(obs_node) << 16) |
                   (static_cast<std::uint64_t>(mask) << 8) |
                   static_cast<std::uint64_t>(depth);
        };
        struct Item {
            std::uint32_t node;
            std::uint32_t obs_node;
            std::uint8_t mask;
            int depth;
        };
        std::unordered_set<std::uint64_t> seen;
        std::deque<Item> work;

        auto violation = [&](const Item& it) {
            std::ostringstream os;
            os << "projection violated at pair " << format_state_pair(fsa, cc.nodes[it.node])
               << " after " << it.depth << " observable steps: stretch not within "
               << format_state_set(fsa, obs.nodes[it.obs_node]);
            return os.str();
        };

        for (std::uint32_t id : cc.initial) {
            Item it{id, 0, pair_mask(cc.nodes[id]), 0};
            if (seen.insert(key(it.node, it.obs_node, it.mask, it.depth)).second) {
                if (!mask_within(it.mask, obs.nodes[0])) return {false, violation(it)};
                work.push_back(it);
            }
        }
        while (!work.empty()) {
            Item it = work.front();
            work.pop_front();
            for (std::uint32_t ei : cc.out_edges[it.node]) {
                const auto& e = cc.edges[ei];
                Item next;
                if (e.event.silent()) {
                    next = Item{e.to, it.obs_node,
                                static_cast<std::uint8_t>(it.mask | pair_mask(cc.nodes[e.to])),
                                it.depth};
                } else {
                    if (it.depth >= kMaxObservableSteps) continue;
                    std::int64_t obs_next = obs.next[it.obs_node][e.event.symbol];
                    next = Item{e.to,
                                obs_next < 0 ? it.obs_node
                                             : static_cast<std::uint32_t>(obs_next),
                                pair_mask(cc.nodes[e.to]), it.depth + 1};
                    if (obs_next < 0) return {false, violation(next)};
                }
                if (!seen.insert(key(next.node, next.obs_node, next.mask, next.depth))
                         .second)
                    continue;
                if (!mask_within(next.mask, obs.nodes[next.obs_node]))
                    return {false, violation(next)};
                work.push_back(next);
            }
        }
    }

    return {};
}

}  // namespace spdet
