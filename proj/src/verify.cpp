#include "spdet/verify.hpp"

#include <algorithm>
#include <chrono>

#include "spdet/graph.hpp"

namespace spdet {

std::string to_string(PropertyKind p) {
    switch (p) {
        case PropertyKind::Spd: return "spd";
        case PropertyKind::Spdd: return "spdd";
        case PropertyKind::Sd: return "sd";
    }
    return {};
}

std::string to_string(MethodKind m) {
    switch (m) {
        case MethodKind::Observer: return "observer";
        case MethodKind::Detector: return "detector";
        case MethodKind::CcEpsilon: return "cc";
        case MethodKind::LegacyDetector: return "legacy-detector";
        case MethodKind::LegacyObserver: return "legacy-observer";
    }
    return {};
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "holds";
        case Outcome::Fails: return "fails";
        case Outcome::Unknown: return "unknown";
    }
    return {};
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// The system generates an infinite run iff some reachable state lies on a
// transition cycle.
bool generates_infinite_run(const Fsa& fsa) {
    StateSet reach = reachable_states(fsa);
    DiGraph g(fsa.state_count());
    for (const Transition& t : fsa.transitions()) g.add_edge(t.src, t.dst);
    SccPartition scc = tarjan_scc(g);
    std::vector<std::uint32_t> size(scc.component_count, 0);
    for (StateId x = 0; x < fsa.state_count(); ++x) ++size[scc.component_of[x]];
    for (StateId x : reach) {
        if (size[scc.component_of[x]] > 1) return true;
        for (const auto& e : g.out(x))
            if (e.to == x) return true;
    }
    return false;
}

bool violates_spec(const StateSet& q, const SpecPairs& spec) {
    for (const auto& [a, b] : spec)
        if (q.contains(a) && q.contains(b)) return true;
    return false;
}

DiGraph observer_graph(const Observer& obs) {
    DiGraph g(obs.nodes.size());
    for (std::uint32_t v = 0; v < obs.nodes.size(); ++v)
        for (SymbolId s = 0; s < obs.next[v].size(); ++s)
            if (obs.next[v][s] >= 0)
                g.add_edge(v, static_cast<std::uint32_t>(obs.next[v][s]), s);
    return g;
}

DiGraph detector_graph(const Detector& det) {
    DiGraph g(det.nodes.size());
    for (const auto& e : det.edges) g.add_edge(e.from, e.to, e.symbol);
    return g;
}

// First symbol connecting u -> v in the graph, used to annotate cycles.
std::optional<SymbolId> edge_symbol(const DiGraph& g, std::uint32_t u, std::uint32_t v) {
    std::optional<SymbolId> best;
    for (const auto& e : g.out(u)) {
        if (e.to != v || e.label < 0) continue;
        SymbolId s = static_cast<SymbolId>(e.label);
        if (!best || s < *best) best = s;
    }
    return best;
}

template <typename NodeName>
CycleWitness make_cycle_witness(const Fsa& fsa, const DiGraph& g,
                                const std::vector<std::uint32_t>& walk,
                                NodeName&& name_of) {
    CycleWitness w;
    w.node_ids = walk;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        w.nodes.push_back(name_of(walk[i]));
        auto s = edge_symbol(g, walk[i], walk[(i + 1) % walk.size()]);
        w.symbol_ids.push_back(s.value_or(0));
        w.symbols.push_back(s ? fsa.symbol_name(*s) : "");
    }
    return w;
}

DivergenceWitness make_divergence_witness(const Fsa& fsa, std::uint32_t node_id,
                                          std::string node_name, StateId x) {
    DivergenceWitness w;
    w.node_id = node_id;
    w.node = std::move(node_name);
    w.state_id = x;
    w.state = fsa.state_name(x);
    w.lasso = *silent_lasso_from(fsa, x);
    return w;
}

Condition divergence_condition(std::string description) {
    return Condition{"cond1", std::move(description), false, std::nullopt, std::nullopt};
}

Condition cycle_condition(std::string description) {
    return Condition{"cond2", std::move(description), false, std::nullopt, std::nullopt};
}

Outcome outcome_of(const std::vector<Condition>& conditions) {
    for (const Condition& c : conditions)
        if (c.fired) return Outcome::Fails;
    return Outcome::Holds;
}

// Shared body of the two observer-based checks: `violating` picks the
// nodes whose persistence refutes the property.
template <typename Violating>
Verdict check_on_observer(const Fsa& fsa, PropertyKind property, MethodKind method,
                          std::size_t max_nodes, Violating&& violating,
                          std::string cond1_desc, std::string cond2_desc) {
    auto start = Clock::now();
    Verdict verdict;
    verdict.property = property;
    verdict.method = method;

    Observer obs;
    try {
        obs = build_observer(fsa, max_nodes);
    } catch (const BudgetExceeded& e) {
        verdict.outcome = Outcome::Unknown;
        verdict.stats.nodes_built = e.nodes_built;
        verdict.stats.milliseconds = ms_since(start);
        return verdict;
    }
    verdict.stats.nodes_built = obs.nodes.size();
    verdict.stats.vacuous = !generates_infinite_run(fsa);

    Condition cond1 = divergence_condition(std::move(cond1_desc));
    Condition cond2 = cycle_condition(std::move(cond2_desc));

    StateSet div = divergent_states(fsa);
    for (std::uint32_t v = 0; v < obs.nodes.size() && !cond1.fired; ++v) {
        const StateSet& q = obs.nodes[v];
        if (!violating(q) || !q.intersects(div)) continue;
        for (StateId x : q)
            if (div.contains(x)) {
                cond1.fired = true;
                cond1.divergence =
                    make_divergence_witness(fsa, v, format_state_set(fsa, q), x);
                break;
            }
    }

    DiGraph g = observer_graph(obs);
    if (auto walk = cycle_within(g, [&](std::uint32_t v) { return violating(obs.nodes[v]); })) {
        cond2.fired = true;
        cond2.cycle = make_cycle_witness(fsa, g, *walk, [&](std::uint32_t v) {
            return format_state_set(fsa, obs.nodes[v]);
        });
    }

    verdict.conditions = {std::move(cond1), std::move(cond2)};
    verdict.outcome = outcome_of(verdict.conditions);
    verdict.stats.milliseconds = ms_since(start);
    return verdict;
}

}  // namespace

Verdict check_spd_observer(const Fsa& fsa, std::size_t max_nodes) {
    return check_on_observer(
        fsa, PropertyKind::Spd, MethodKind::Observer, max_nodes,
        [](const StateSet& q) { return q.size() > 1; },
        "a reachable estimate with more than one state contains a state "
        "admitting an infinite silent run",
        "a reachable cycle of estimates contains no singleton");
}

Verdict check_spdd_observer(const Fsa& fsa, const SpecPairs& spec, std::size_t max_nodes) {
    return check_on_observer(
        fsa, PropertyKind::Spdd, MethodKind::Observer, max_nodes,
        [&](const StateSet& q) { return violates_spec(q, spec); },
        "a reachable estimate containing a specified pair contains a state "
        "admitting an infinite silent run",
        "a reachable cycle of estimates has a specified pair in every node");
}

Verdict check_spd_detector(const Fsa& fsa) {
    auto start = Clock::now();
    Verdict verdict;
    verdict.property = PropertyKind::Spd;
    verdict.method = MethodKind::Detector;

    Detector det = build_detector(fsa);
    verdict.stats.nodes_built = det.nodes.size();
    verdict.stats.vacuous = !generates_infinite_run(fsa);

    Condition cond1 = divergence_condition(
        "a reachable detector node with more than one state contains a state "
        "admitting an infinite silent run");
    Condition cond2 = cycle_condition(
        "a reachable detector cycle has cardinality two throughout");

    StateSet div = divergent_states(fsa);
    for (std::uint32_t v = 0; v < det.nodes.size() && !cond1.fired; ++v) {
        const StateSet& q = det.nodes[v];
        if (q.size() <= 1 || !q.intersects(div)) continue;
        for (StateId x : q)
            if (div.contains(x)) {
                cond1.fired = true;
                cond1.divergence =
                    make_divergence_witness(fsa, v, format_state_set(fsa, q), x);
                break;
            }
    }

    DiGraph g = detector_graph(det);
    if (auto walk =
            cycle_within(g, [&](std::uint32_t v) { return det.nodes[v].size() == 2; })) {
        cond2.fired = true;
        cond2.cycle = make_cycle_witness(fsa, g, *walk, [&](std::uint32_t v) {
            return format_state_set(fsa, det.nodes[v]);
        });
    }

    verdict.conditions = {std::move(cond1), std::move(cond2)};
    verdict.outcome = outcome_of(verdict.conditions);
    verdict.stats.milliseconds = ms_since(start);
    return verdict;
}

Verdict check_spd_cc(const Fsa& fsa) {
    auto start = Clock::now();
    Verdict verdict;
    verdict.property = PropertyKind::Spd;
    verdict.method = MethodKind::CcEpsilon;

    CompositionAutomaton cc = extend_epsilon(build_self_composition(fsa), fsa);
    verdict.stats.nodes_built = cc.nodes.size();
    verdict.stats.vacuous = !generates_infinite_run(fsa);

    Condition cond1 = divergence_condition(
        "a reachable pair of distinct states has a left component admitting "
        "an infinite silent run");
    Condition cond2 = cycle_condition(
        "a reachable cycle of distinct-state pairs emits one output symbol "
        "per step");

    StateSet div = divergent_states(fsa);
    for (std::uint32_t v = 0; v < cc.nodes.size(); ++v) {
        StatePair p = cc.nodes[v];
        if (p.diagonal() || !div.contains(p.left)) continue;
        cond1.fired = true;
        cond1.divergence =
            make_divergence_witness(fsa, v, format_state_pair(fsa, p), p.left);
        break;
    }

    ObservableStepGraph osg = one_observable_step_graph(cc);
    if (auto walk = cycle_within(osg.graph, [](std::uint32_t) { return true; })) {
        cond2.fired = true;
        cond2.cycle = make_cycle_witness(fsa, osg.graph, *walk, [&](std::uint32_t v) {
            return format_state_pair(fsa, cc.nodes[osg.cc_node[v]]);
        });
        // Witness ids refer to composition nodes, not graph positions.
        for (auto& id : cond2.cycle->node_ids) id = osg.cc_node[id];
    }

    verdict.conditions = {std::move(cond1), std::move(cond2)};
    verdict.outcome = outcome_of(verdict.conditions);
    verdict.stats.milliseconds = ms_since(start);
    return verdict;
}

Verdict legacy_check_spd_detector(const Fsa& fsa) {
    auto start = Clock::now();
    Verdict verdict;
    verdict.property = PropertyKind::Spd;
    verdict.method = MethodKind::LegacyDetector;
    verdict.assumption1 = check_assumption1(fsa);

    Detector det = build_detector(fsa);
    verdict.stats.nodes_built = det.nodes.size();
    verdict.stats.vacuous = !generates_infinite_run(fsa);

    Condition cond2 = cycle_condition(
        "a reachable detector cycle contains no singleton");
    DiGraph g = detector_graph(det);
    if (auto walk =
            cycle_within(g, [&](std::uint32_t v) { return det.nodes[v].size() >= 2; })) {
        cond2.fired = true;
        cond2.cycle = make_cycle_witness(fsa, g, *walk, [&](std::uint32_t v) {
            return format_state_set(fsa, det.nodes[v]);
        });
    }

    verdict.conditions = {std::move(cond2)};
    verdict.outcome = outcome_of(verdict.conditions);
    verdict.stats.milliseconds = ms_since(start);
    return verdict;
}

Verdict legacy_check_spdd_observer(const Fsa& fsa, const SpecPairs& spec,
                                   std::size_t max_nodes) {
    auto start = Clock::now();
    Verdict verdict;
    verdict.property = PropertyKind::Spdd;
    verdict.method = MethodKind::LegacyObserver;
    verdict.assumption1 = check_assumption1(fsa);

    Observer obs;
    try {
        obs = build_observer(fsa, max_nodes);
    } catch (const BudgetExceeded& e) {
        verdict.outcome = Outcome::Unknown;
        verdict.stats.nodes_built = e.nodes_built;
        verdict.stats.milliseconds = ms_since(start);
        return verdict;
    }
    verdict.stats.nodes_built = obs.nodes.size();
    verdict.stats.vacuous = !generates_infinite_run(fsa);

    Condition cond2 = cycle_condition(
        "a reachable cycle of estimates has a specified pair in every node");
    DiGraph g = observer_graph(obs);
    if (auto walk = cycle_within(
            g, [&](std::uint32_t v) { return violates_spec(obs.nodes[v], spec); })) {
        cond2.fired = true;
        cond2.cycle = make_cycle_witness(fsa, g, *walk, [&](std::uint32_t v) {
            return format_state_set(fsa, obs.nodes[v]);
        });
    }

    verdict.conditions = {std::move(cond2)};
    verdict.outcome = outcome_of(verdict.conditions);
    verdict.stats.milliseconds = ms_since(start);
    return verdict;
}

Verdict legacy_check_sd_detector(const Fsa& fsa) {
    auto start = Clock::now();
    Verdict verdict;
    verdict.property = PropertyKind::Sd;
    verdict.method = MethodKind::LegacyDetector;
    verdict.assumption1 = check_assumption1(fsa);

    Detector det = build_detector(fsa);
    verdict.stats.nodes_built = det.nodes.size();
    verdict.stats.vacuous = !generates_infinite_run(fsa);

    Condition cond{"cond1",
                   "a node with more than one state is reachable from a "
                   "reachable detector cycle",
                   false, std::nullopt, std::nullopt};

    DiGraph g = detector_graph(det);
    SccPartition scc = tarjan_scc(g);
    std::vector<std::uint32_t> comp_size(scc.component_count, 0);
    for (std::uint32_t v = 0; v < det.nodes.size(); ++v) ++comp_size[scc.component_of[v]];
    std::vector<std::uint32_t> cycle_nodes;
    for (std::uint32_t v = 0; v < det.nodes.size(); ++v) {
        if (comp_size[scc.component_of[v]] > 1) { cycle_nodes.push_back(v); continue; }
        for (const auto& e : g.out(v))
            if (e.to == v) { cycle_nodes.push_back(v); break; }
    }
    for (std::uint32_t v : reachable_from(g, cycle_nodes)) {
        if (det.nodes[v].size() <= 1) continue;
        cond.fired = true;
        CycleWitness w;
        w.node_ids = {v};
        w.nodes = {format_state_set(fsa, det.nodes[v])};
        cond.cycle = std::move(w);
        break;
    }

    verdict.conditions = {std::move(cond)};
    verdict.outcome = outcome_of(verdict.conditions);
    verdict.stats.milliseconds = ms_since(start);
    return verdict;
}

}  // namespace spdet
