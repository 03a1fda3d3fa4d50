#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "spdet/graph.hpp"

using namespace spdet;

namespace {

bool edge_exists(const DiGraph& g, std::uint32_t u, std::uint32_t v) {
    for (const auto& e : g.out(u))
        if (e.to == v) return true;
    return false;
}

// Enumerates every simple cycle by DFS and keeps those that stay inside
// `keep`. Exponential, fine at test sizes.
bool has_simple_cycle_within(const DiGraph& g, const std::vector<char>& keep) {
    const std::size_t n = g.node_count();
    std::vector<char> on_path(n, 0);
    bool found = false;
    std::uint32_t start = 0;
    auto dfs = [&](auto&& self, std::uint32_t v) -> void {
        if (found) return;
        on_path[v] = 1;
        for (const auto& e : g.out(v)) {
            if (!keep[e.to]) continue;
            if (e.to == start) { found = true; return; }
            if (e.to > start && !on_path[e.to]) self(self, e.to);
        }
        on_path[v] = 0;
    };
    for (start = 0; start < n && !found; ++start) {
        if (!keep[start]) continue;
        std::fill(on_path.begin(), on_path.end(), 0);
        dfs(dfs, start);
    }
    return found;
}

bool reaches(const DiGraph& g, std::uint32_t from, std::uint32_t to) {
    std::vector<std::uint32_t> src{from};
    auto set = reachable_from(g, src);
    return std::binary_search(set.begin(), set.end(), to);
}

}  // namespace

TEST_CASE("scc of a single cycle") {
    DiGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    SccPartition scc = tarjan_scc(g);
    CHECK(scc.component_count == 1);
    CHECK(scc.component_of[0] == scc.component_of[1]);
    CHECK(scc.component_of[1] == scc.component_of[2]);
}

TEST_CASE("scc of a dag is all singletons") {
    DiGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    SccPartition scc = tarjan_scc(g);
    CHECK(scc.component_count == 4);
    std::set<std::uint32_t> ids(scc.component_of.begin(), scc.component_of.end());
    CHECK(ids.size() == 4);
}

TEST_CASE("scc component ids are reverse topological") {
    // 0 -> 1 -> 2 with a loop on 2: the sink component gets the smallest id.
    DiGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 2);
    SccPartition scc = tarjan_scc(g);
    CHECK(scc.component_of[2] < scc.component_of[1]);
    CHECK(scc.component_of[1] < scc.component_of[0]);
}

TEST_CASE("scc validity on random graphs") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 100; ++round) {
        const std::size_t n = 1 + rng() % 8;
        DiGraph g(n);
        const std::size_t edges = rng() % (2 * n + 1);
        for (std::size_t i = 0; i < edges; ++i)
            g.add_edge(static_cast<std::uint32_t>(rng() % n),
                       static_cast<std::uint32_t>(rng() % n));
        SccPartition scc = tarjan_scc(g);
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = 0; v < n; ++v) {
                if (u == v) continue;
                bool same = scc.component_of[u] == scc.component_of[v];
                CHECK(same == (reaches(g, u, v) && reaches(g, v, u)));
                if (!same && reaches(g, u, v))
                    CHECK(scc.component_of[v] < scc.component_of[u]);
            }
    }
}

TEST_CASE("cycle search on observer-shaped graphs") {
    // Shaped like the subset automaton of s1: node 0 -> node 1 with a
    // self-loop on node 1; only node 1 is non-singleton.
    DiGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(1, 1);
    auto cycle = cycle_within(g, [](std::uint32_t v) { return v == 1; });
    REQUIRE(cycle.has_value());
    CHECK(*cycle == std::vector<std::uint32_t>{1});

    // Shaped like the subset automaton of s2: a single edge, no cycle.
    DiGraph h(2);
    h.add_edge(0, 1);
    CHECK(!cycle_within(h, [](std::uint32_t v) { return v == 1; }).has_value());
}

TEST_CASE("cycle witnesses are closed walks through kept nodes") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 300; ++round) {
        const std::size_t n = 2 + rng() % 5;
        DiGraph g(n);
        const std::size_t edges = rng() % (2 * n + 2);
        for (std::size_t i = 0; i < edges; ++i)
            g.add_edge(static_cast<std::uint32_t>(rng() % n),
                       static_cast<std::uint32_t>(rng() % n));
        std::vector<char> keep(n);
        for (std::size_t v = 0; v < n; ++v) keep[v] = rng() % 3 != 0;

        auto cycle = cycle_within(g, [&](std::uint32_t v) { return keep[v] != 0; });
        CHECK(cycle.has_value() == has_simple_cycle_within(g, keep));
        if (!cycle) continue;
        REQUIRE(!cycle->empty());
        for (std::size_t i = 0; i < cycle->size(); ++i) {
            CHECK(keep[(*cycle)[i]]);
            CHECK(edge_exists(g, (*cycle)[i], (*cycle)[(i + 1) % cycle->size()]));
        }
    }
}

TEST_CASE("forward closure") {
    DiGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    CHECK(reachable_from(g, std::vector<std::uint32_t>{}) ==
          std::vector<std::uint32_t>{});
    CHECK(reachable_from(g, std::vector<std::uint32_t>{0}) ==
          std::vector<std::uint32_t>{0, 1, 2});
    CHECK(reachable_from(g, std::vector<std::uint32_t>{0, 3}) ==
          std::vector<std::uint32_t>{0, 1, 2, 3});
}
