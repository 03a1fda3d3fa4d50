#include "spdet/constructions.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace spdet {

Observer build_observer(const Fsa& fsa, std::size_t max_nodes) {
    if (max_nodes < 1) throw std::invalid_argument("observer node budget must be >= 1");

    Observer obs;
    StateSet init = unobservable_reach(fsa, fsa.initial());
    if (init.empty()) return obs;

    std::map<StateSet, std::uint32_t> index;
    std::deque<std::uint32_t> work;

    auto intern = [&](StateSet q) -> std::uint32_t {
        auto it = index.find(q);
        if (it != index.end()) return it->second;
        if (obs.nodes.size() >= max_nodes)
            throw BudgetExceeded(obs.nodes.size(), max_nodes);
        std::uint32_t id = static_cast<std::uint32_t>(obs.nodes.size());
        obs.nodes.push_back(q);
        obs.next.emplace_back(fsa.symbol_count(), -1);
        index.emplace(std::move(q), id);
        work.push_back(id);
        return id;
    };

    intern(std::move(init));
    while (!work.empty()) {
        std::uint32_t id = work.front();
        work.pop_front();
        for (SymbolId s = 0; s < fsa.symbol_count(); ++s) {
            StateSet q = unobservable_reach(fsa, observable_reach(fsa, obs.nodes[id], s));
            if (q.empty()) continue;
            obs.next[id][s] = intern(std::move(q));
        }
    }
    return obs;
}

namespace {

void detector_targets(const StateSet& reach, std::vector<StateSet>& out) {
    out.clear();
    if (reach.size() <= 1) {
        if (!reach.empty()) out.push_back(reach);
        return;
    }
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (std::size_t j = i + 1; j < reach.size(); ++j)
            out.push_back(StateSet::from_unsorted({reach[i], reach[j]}));
}

}  // namespace

Detector build_detector(const Fsa& fsa) {
    Detector det;
    StateSet init = unobservable_reach(fsa, fsa.initial());
    if (init.empty()) return det;

    std::map<StateSet, std::uint32_t> index;
    std::deque<std::uint32_t> work;

    auto intern = [&](StateSet q) -> std::uint32_t {
        auto it = index.find(q);
        if (it != index.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(det.nodes.size());
        det.nodes.push_back(q);
        det.next.emplace_back();
        index.emplace(std::move(q), id);
        work.push_back(id);
        return id;
    };

    intern(std::move(init));
    std::vector<StateSet> targets;
    while (!work.empty()) {
        std::uint32_t id = work.front();
        work.pop_front();
        for (SymbolId s = 0; s < fsa.symbol_count(); ++s) {
            StateSet reach = unobservable_reach(fsa, observable_reach(fsa, det.nodes[id], s));
            detector_targets(reach, targets);
            for (StateSet& q : targets) {
                std::uint32_t to = intern(std::move(q));
                det.edges.push_back(Detector::Edge{id, s, to});
                det.next[id].emplace_back(s, to);
            }
        }
    }
    return det;
}

namespace {

// One-step successors of a pair under the product rules, with the label
// of the step (symbol id, or -1 for a silent move). Computed straight
// from the base automaton, independent of what has been materialized.
struct PairStep {
    PairEvent event;
    StatePair to;
};

std::vector<PairStep> pair_steps(const Fsa& fsa, StatePair p) {
    std::vector<PairStep> steps;
    for (const ObsEdge& el : fsa.observable_out(p.left))
        for (const ObsEdge& er : fsa.observable_out(p.right)) {
            if (el.symbol != er.symbol) continue;
            steps.push_back({PairEvent{PairEventKind::ObsPair, el.event, er.event, el.symbol},
                             StatePair{el.dst, er.dst}});
        }
    for (auto [ev, dst] : fsa.silent_out(p.left))
        steps.push_back({PairEvent{PairEventKind::SilentLeft, ev, 0, 0},
                         StatePair{dst, p.right}});
    for (auto [ev, dst] : fsa.silent_out(p.right))
        steps.push_back({PairEvent{PairEventKind::SilentRight, 0, ev, 0},
                         StatePair{p.left, dst}});
    return steps;
}

// Labeled targets of the observable steps of a pair, for the collapse rule.
std::set<std::pair<SymbolId, StatePair>> observable_step_targets(const Fsa& fsa, StatePair p) {
    std::set<std::pair<SymbolId, StatePair>> out;
    for (const ObsEdge& el : fsa.observable_out(p.left))
        for (const ObsEdge& er : fsa.observable_out(p.right)) {
            if (el.symbol != er.symbol) continue;
            out.emplace(el.symbol, StatePair{el.dst, er.dst});
        }
    return out;
}

CompositionAutomaton build_composition(const Fsa& fsa, bool epsilon_extended) {
    CompositionAutomaton cc;
    cc.epsilon_extended = epsilon_extended;

    std::deque<std::uint32_t> work;
    auto intern = [&](StatePair p) -> std::uint32_t {
        auto it = cc.index.find(p);
        if (it != cc.index.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(cc.nodes.size());
        cc.nodes.push_back(p);
        cc.out_edges.emplace_back();
        cc.index.emplace(p, id);
        work.push_back(id);
        return id;
    };

    for (StateId l : fsa.initial())
        for (StateId r : fsa.initial()) cc.initial.push_back(intern({l, r}));

    auto add_edge = [&](std::uint32_t from, PairEvent ev, std::uint32_t to) {
        cc.out_edges[from].push_back(static_cast<std::uint32_t>(cc.edges.size()));
        cc.edges.push_back(CompositionAutomaton::Edge{from, ev, to});
    };

    while (!work.empty()) {
        std::uint32_t id = work.front();
        work.pop_front();
        StatePair p = cc.nodes[id];
        for (const PairStep& step : pair_steps(fsa, p))
            add_edge(id, step.event, intern(step.to));

        if (!epsilon_extended || p.diagonal()) continue;

        // Collapse rule: link to a diagonal whose observable behavior the
        // off-diagonal pair cannot reproduce label-and-target exactly.
        auto own = observable_step_targets(fsa, p);
        for (StateId d : {p.left, p.right}) {
            StatePair diag{d, d};
            bool missing = false;
            for (const auto& t : observable_step_targets(fsa, diag))
                if (!own.count(t)) { missing = true; break; }
            if (missing)
                add_edge(id, PairEvent{PairEventKind::EpsLink, 0, 0, 0}, intern(diag));
        }
    }
    return cc;
}

}  // namespace

CompositionAutomaton build_self_composition(const Fsa& fsa) {
    return build_composition(fsa, false);
}

CompositionAutomaton extend_epsilon(const CompositionAutomaton& cc, const Fsa& fsa) {
    if (cc.epsilon_extended)
        throw std::invalid_argument("composition is already epsilon-extended");
    return build_composition(fsa, true);
}

ObservableStepGraph one_observable_step_graph(const CompositionAutomaton& cc) {
    if (!cc.epsilon_extended)
        throw std::invalid_argument("one_observable_step_graph expects an "
                                    "epsilon-extended composition");

    std::vector<std::uint32_t> off_diagonal;
    std::vector<std::int64_t> graph_id(cc.nodes.size(), -1);
    for (std::uint32_t id = 0; id < cc.nodes.size(); ++id)
        if (!cc.nodes[id].diagonal()) {
            graph_id[id] = static_cast<std::int64_t>(off_diagonal.size());
            off_diagonal.push_back(id);
        }

    auto silent_closure = [&](std::uint32_t from) {
        std::vector<char> seen(cc.nodes.size(), 0);
        std::deque<std::uint32_t> q{from};
        seen[from] = 1;
        std::vector<std::uint32_t> out;
        while (!q.empty()) {
            std::uint32_t v = q.front();
            q.pop_front();
            out.push_back(v);
            for (std::uint32_t ei : cc.out_edges[v]) {
                const auto& e = cc.edges[ei];
                if (!e.event.silent()) continue;
                if (!seen[e.to]) { seen[e.to] = 1; q.push_back(e.to); }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    ObservableStepGraph result{DiGraph(off_diagonal.size()), off_diagonal};
    std::set<std::tuple<std::uint32_t, SymbolId, std::uint32_t>> emitted;
    for (std::uint32_t gi = 0; gi < off_diagonal.size(); ++gi) {
        for (std::uint32_t mid : silent_closure(off_diagonal[gi])) {
            for (std::uint32_t ei : cc.out_edges[mid]) {
                const auto& e = cc.edges[ei];
                if (e.event.kind != PairEventKind::ObsPair) continue;
                for (std::uint32_t tgt : silent_closure(e.to)) {
                    if (graph_id[tgt] < 0) continue;
                    std::uint32_t gj = static_cast<std::uint32_t>(graph_id[tgt]);
                    if (emitted.insert({gi, e.event.symbol, gj}).second)
                        result.graph.add_edge(gi, gj, e.event.symbol);
                }
            }
        }
    }
    return result;
}

std::string format_state_pair(const Fsa& fsa, StatePair p) {
    return "(" + fsa.state_name(p.left) + "," + fsa.state_name(p.right) + ")";
}

std::string format_pair_event(const Fsa& fsa, const PairEvent& ev) {
    switch (ev.kind) {
        case PairEventKind::ObsPair:
            return "(" + fsa.event_name(ev.left_event) + "," + fsa.event_name(ev.right_event) + ")";
        case PairEventKind::SilentLeft:
            return "(" + fsa.event_name(ev.left_event) + ",ε)";
        case PairEventKind::SilentRight:
            return "(ε," + fsa.event_name(ev.right_event) + ")";
        case PairEventKind::EpsLink:
            return "ε";
    }
    return {};
}

}  // namespace spdet
