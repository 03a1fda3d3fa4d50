#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "spdet/generator.hpp"
#include "spdet/verify.hpp"
#include "test_helpers.hpp"

using namespace spdet;
using namespace spdet::testing;

namespace {

const Condition& cond(const Verdict& v, const std::string& id) {
    for (const Condition& c : v.conditions)
        if (c.id == id) return c;
    REQUIRE(false);
    return v.conditions.front();
}

Fsa random_small(std::uint64_t seed, double silent_fraction, std::uint32_t initial = 1) {
    GenConfig cfg;
    cfg.states = 5;
    cfg.events = 4;
    cfg.silent_fraction = silent_fraction;
    cfg.density = 2.0;
    cfg.initial_count = initial;
    cfg.seed = seed;
    return random_fsa(cfg);
}

// Replays a detector-cycle witness: every step must be a detector edge
// and every node must satisfy the predicate.
template <typename Pred>
void replay_detector_cycle(const Fsa& fsa, const CycleWitness& w, Pred&& pred) {
    Detector det = build_detector(fsa);
    REQUIRE(!w.node_ids.empty());
    for (std::size_t i = 0; i < w.node_ids.size(); ++i) {
        std::uint32_t u = w.node_ids[i];
        std::uint32_t v = w.node_ids[(i + 1) % w.node_ids.size()];
        REQUIRE(u < det.nodes.size());
        CHECK(pred(det.nodes[u]));
        bool found = false;
        for (const auto& e : det.edges)
            if (e.from == u && e.to == v && e.symbol == w.symbol_ids[i]) found = true;
        CHECK(found);
    }
}

}  // namespace

TEST_CASE("s1 fails periodic detectability through the cycle condition only") {
    Fsa s1 = make_s1();
    for (const Verdict& v :
         {check_spd_observer(s1), check_spd_detector(s1), check_spd_cc(s1)}) {
        CHECK(v.outcome == Outcome::Fails);
        CHECK(!cond(v, "cond1").fired);
        CHECK(cond(v, "cond2").fired);
        CHECK(!v.stats.vacuous);
    }
    Verdict det = check_spd_detector(s1);
    REQUIRE(cond(det, "cond2").cycle.has_value());
    CHECK(cond(det, "cond2").cycle->nodes == std::vector<std::string>{"{x1,x2}"});
}

TEST_CASE("s2 fails periodic detectability through the divergence condition only") {
    Fsa s2 = make_s2();
    for (const Verdict& v :
         {check_spd_observer(s2), check_spd_detector(s2), check_spd_cc(s2)}) {
        CHECK(v.outcome == Outcome::Fails);
        CHECK(cond(v, "cond1").fired);
        CHECK(!cond(v, "cond2").fired);
    }
    Verdict cc = check_spd_cc(s2);
    const auto& w = cond(cc, "cond1").divergence;
    REQUIRE(w.has_value());
    CHECK(w->node == "(x2,x1)");  // left component is the divergent state
    CHECK(w->state == "x2");
}

TEST_CASE("s3 fails periodic detectability through the cycle condition") {
    Fsa s3 = make_s3();
    Verdict det = check_spd_detector(s3);
    CHECK(det.outcome == Outcome::Fails);
    CHECK(!cond(det, "cond1").fired);
    CHECK(cond(det, "cond2").fired);

    Verdict cc = check_spd_cc(s3);
    CHECK(cc.outcome == Outcome::Fails);
    CHECK(!cond(cc, "cond1").fired);
    CHECK(cond(cc, "cond2").fired);
    REQUIRE(cond(cc, "cond2").cycle.has_value());
    const CycleWitness& w = *cond(cc, "cond2").cycle;
    CHECK(w.nodes == std::vector<std::string>{"(x1,x2)"});
    CHECK(w.symbols == std::vector<std::string>{"b"});
}

TEST_CASE("degenerate automata hold vacuously") {
    Fsa single = FsaBuilder().states({"x0"}).initial({"x0"}).build();
    for (const Verdict& v :
         {check_spd_observer(single), check_spd_detector(single), check_spd_cc(single)}) {
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.stats.vacuous);
    }

    Fsa no_init = FsaBuilder().states({"x0"}).event("t", "a").trans("x0", "t", "x0").build();
    for (const Verdict& v : {check_spd_observer(no_init), check_spd_detector(no_init),
                             check_spd_cc(no_init)}) {
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.stats.vacuous);
        CHECK(v.stats.nodes_built == 0);
    }

    Fsa loop = FsaBuilder().states({"x0"}).initial({"x0"}).event("t", "a").trans("x0", "t", "x0").build();
    Verdict v = check_spd_detector(loop);
    CHECK(v.outcome == Outcome::Holds);
    CHECK(!v.stats.vacuous);
}

TEST_CASE("spdd on s3 distinguishes the two specifications") {
    Fsa s3 = make_s3();
    StateId x0 = *s3.state_by_name("x0");
    StateId x1 = *s3.state_by_name("x1");
    StateId x2 = *s3.state_by_name("x2");

    Verdict bad = check_spdd_observer(s3, {{x1, x2}});
    CHECK(bad.outcome == Outcome::Fails);
    CHECK(!cond(bad, "cond1").fired);
    CHECK(cond(bad, "cond2").fired);

    Verdict good = check_spdd_observer(s3, {{x0, x2}});
    CHECK(good.outcome == Outcome::Holds);

    CHECK(check_spdd_observer(s3, {}).outcome == Outcome::Holds);
}

TEST_CASE("spdd on s2 fires the divergence condition") {
    Fsa s2 = make_s2();
    StateId x1 = *s2.state_by_name("x1");
    StateId x2 = *s2.state_by_name("x2");
    Verdict v = check_spdd_observer(s2, {{x1, x2}});
    CHECK(v.outcome == Outcome::Fails);
    CHECK(cond(v, "cond1").fired);
    CHECK(!cond(v, "cond2").fired);
    REQUIRE(cond(v, "cond1").divergence.has_value());
    CHECK(cond(v, "cond1").divergence->state == "x2");
    CHECK(cond(v, "cond1").divergence->node == "{x1,x2}");
}

TEST_CASE("legacy checks reproduce the documented wrong answers") {
    Fsa s2 = make_s2();
    Verdict legacy_spd = legacy_check_spd_detector(s2);
    CHECK(legacy_spd.outcome == Outcome::Holds);  // wrong: s2 is not detectable
    REQUIRE(legacy_spd.assumption1.has_value());
    CHECK(!legacy_spd.assumption1->deadlock_free);
    CHECK(!legacy_spd.assumption1->divergence_free);
    CHECK(check_spd_detector(s2).outcome == Outcome::Fails);

    StateId x1 = *s2.state_by_name("x1");
    StateId x2 = *s2.state_by_name("x2");
    Verdict legacy_spdd = legacy_check_spdd_observer(s2, {{x1, x2}});
    CHECK(legacy_spdd.outcome == Outcome::Holds);  // wrong as well
    CHECK(check_spdd_observer(s2, {{x1, x2}}).outcome == Outcome::Fails);
}

TEST_CASE("legacy and assumption-free verdicts agree for s1") {
    Fsa s1 = make_s1();
    Verdict legacy = legacy_check_spd_detector(s1);
    REQUIRE(legacy.assumption1.has_value());
    CHECK(legacy.assumption1->deadlock_free);
    CHECK(legacy.assumption1->divergence_free);
    CHECK(legacy.outcome == Outcome::Fails);
    CHECK(check_spd_detector(s1).outcome == Outcome::Fails);
}

TEST_CASE("legacy spdd on s3 rejects the separating specification") {
    Fsa s3 = make_s3();
    StateId x1 = *s3.state_by_name("x1");
    StateId x2 = *s3.state_by_name("x2");
    CHECK(legacy_check_spdd_observer(s3, {{x1, x2}}).outcome == Outcome::Fails);
}

TEST_CASE("legacy strong-detectability check on the fixtures") {
    CHECK(legacy_check_sd_detector(make_s1()).outcome == Outcome::Fails);
    CHECK(legacy_check_sd_detector(make_s3()).outcome == Outcome::Fails);

    // A deterministic chain of singletons has no cycle at all.
    Fsa chain = FsaBuilder()
                    .states({"x0", "x1"})
                    .initial({"x0"})
                    .event("t", "a")
                    .trans("x0", "t", "x1")
                    .build();
    CHECK(legacy_check_sd_detector(chain).outcome == Outcome::Holds);
}

TEST_CASE("observer budget exhaustion yields unknown verdicts") {
    Fsa s1 = make_s1();
    Verdict v = check_spd_observer(s1, 1);
    CHECK(v.outcome == Outcome::Unknown);
    CHECK(!v.holds());
    CHECK(v.stats.nodes_built == 1);
    CHECK(v.conditions.empty());

    StateId x1 = *s1.state_by_name("x1");
    StateId x2 = *s1.state_by_name("x2");
    CHECK(check_spdd_observer(s1, {{x1, x2}}, 1).outcome == Outcome::Unknown);
    CHECK(legacy_check_spdd_observer(s1, {{x1, x2}}, 1).outcome == Outcome::Unknown);
    CHECK(check_spd_detector(s1).outcome != Outcome::Unknown);
    CHECK(check_spd_cc(s1).outcome != Outcome::Unknown);
}

TEST_CASE("methods agree on seeded random automata") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        double fraction = seed % 3 == 0 ? 0.0 : (seed % 3 == 1 ? 0.3 : 0.6);
        Fsa fsa = random_small(seed, fraction, seed % 4);
        Verdict obs = check_spd_observer(fsa);
        Verdict det = check_spd_detector(fsa);
        Verdict cc = check_spd_cc(fsa);
        CHECK(obs.outcome == det.outcome);
        CHECK(det.outcome == cc.outcome);
        CHECK(cond(obs, "cond1").fired == cond(det, "cond1").fired);
        CHECK(cond(det, "cond1").fired == cond(cc, "cond1").fired);
        CHECK(cond(obs, "cond2").fired == cond(det, "cond2").fired);
        CHECK(cond(det, "cond2").fired == cond(cc, "cond2").fired);
    }
}

TEST_CASE("witness cycles replay through their constructions") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Fsa fsa = random_small(seed, seed % 2 ? 0.3 : 0.6, 1 + seed % 2);
        Verdict det = check_spd_detector(fsa);
        if (cond(det, "cond2").fired)
            replay_detector_cycle(fsa, *cond(det, "cond2").cycle,
                                  [](const StateSet& q) { return q.size() == 2; });
        if (cond(det, "cond1").fired) {
            const DivergenceWitness& w = *cond(det, "cond1").divergence;
            Detector d = build_detector(fsa);
            REQUIRE(w.node_id < d.nodes.size());
            CHECK(d.nodes[w.node_id].size() > 1);
            CHECK(d.nodes[w.node_id].contains(w.state_id));
            CHECK(divergent_states(fsa).contains(w.state_id));
            CHECK(!w.lasso.cycle.empty());
        }

        Verdict cc = check_spd_cc(fsa);
        if (cond(cc, "cond2").fired) {
            CompositionAutomaton c = extend_epsilon(build_self_composition(fsa), fsa);
            ObservableStepGraph osg = one_observable_step_graph(c);
            const CycleWitness& w = *cond(cc, "cond2").cycle;
            for (std::size_t i = 0; i < w.node_ids.size(); ++i) {
                REQUIRE(w.node_ids[i] < c.nodes.size());
                CHECK(!c.nodes[w.node_ids[i]].diagonal());
                // Each step is an edge of the one-observable-step graph.
                std::uint32_t gu = UINT32_MAX, gv = UINT32_MAX;
                for (std::uint32_t g = 0; g < osg.cc_node.size(); ++g) {
                    if (osg.cc_node[g] == w.node_ids[i]) gu = g;
                    if (osg.cc_node[g] == w.node_ids[(i + 1) % w.node_ids.size()]) gv = g;
                }
                REQUIRE(gu != UINT32_MAX);
                REQUIRE(gv != UINT32_MAX);
                bool found = false;
                for (const auto& e : osg.graph.out(gu))
                    if (e.to == gv && e.label == w.symbol_ids[i]) found = true;
                CHECK(found);
            }
        }
    }
}

TEST_CASE("spdd over all distinct pairs collapses to spd") {
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        Fsa fsa = random_small(seed, seed % 2 ? 0.0 : 0.6, 1 + seed % 2);
        SpecPairs all;
        for (StateId a = 0; a < fsa.state_count(); ++a)
            for (StateId b = 0; b < fsa.state_count(); ++b)
                if (a != b) all.emplace_back(a, b);
        CHECK(check_spdd_observer(fsa, all).holds() == check_spd_observer(fsa).holds());
    }
}

TEST_CASE("legacy verdicts match on automata satisfying the assumptions") {
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 300 && covered < 60; ++seed) {
        Fsa fsa = random_small(seed, seed % 2 ? 0.0 : 0.3, 1 + seed % 2);
        Assumption1Report a1 = check_assumption1(fsa);
        if (!a1.deadlock_free || !a1.divergence_free) continue;
        ++covered;
        CHECK(legacy_check_spd_detector(fsa).holds() == check_spd_detector(fsa).holds());
        SpecPairs spec;
        if (fsa.state_count() >= 2) spec.emplace_back(0, 1);
        CHECK(legacy_check_spdd_observer(fsa, spec).holds() ==
              check_spdd_observer(fsa, spec).holds());
    }
    CHECK(covered > 0);
}
