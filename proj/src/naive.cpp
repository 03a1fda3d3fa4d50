#include "spdet/naive.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace spdet {

namespace {

constexpr std::size_t kMaxStates = 8;

// Depth-bounded enumeration of silent paths from x: a lasso exists iff
// some path of length at most n+1 revisits a state on the path.
bool has_silent_lasso(const Fsa& fsa, StateId x) {
    std::vector<StateId> path{x};
    auto dfs = [&](auto&& self, StateId u) -> bool {
        if (path.size() > fsa.state_count() + 1) return false;
        for (auto [ev, y] : fsa.silent_out(u)) {
            (void)ev;
            if (std::find(path.begin(), path.end(), y) != path.end()) return true;
            path.push_back(y);
            if (self(self, y)) return true;
            path.pop_back();
        }
        return false;
    };
    return dfs(dfs, x);
}

struct EstimateGraph {
    std::vector<StateSet> estimates;                          // discovery order
    std::vector<std::vector<std::uint32_t>> succ;             // by symbol, -1 absent
};

// Enumerates every distinct nonempty estimate by extending observation
// sequences symbol by symbol, recomputing each estimate from scratch.
EstimateGraph enumerate_estimates(const Fsa& fsa) {
    EstimateGraph g;
    std::map<StateSet, std::uint32_t> index;
    std::vector<std::vector<SymbolId>> seq_of;

    StateSet first = current_state_estimate(fsa, {});
    if (first.empty()) return g;
    index.emplace(first, 0);
    g.estimates.push_back(first);
    g.succ.emplace_back(fsa.symbol_count(), UINT32_MAX);
    seq_of.push_back({});

    for (std::uint32_t v = 0; v < g.estimates.size(); ++v) {
        for (SymbolId s = 0; s < fsa.symbol_count(); ++s) {
            std::vector<SymbolId> seq = seq_of[v];
            seq.push_back(s);
            StateSet m = current_state_estimate(fsa, seq);
            if (m.empty()) continue;
            auto it = index.find(m);
            std::uint32_t to;
            if (it == index.end()) {
                to = static_cast<std::uint32_t>(g.estimates.size());
                index.emplace(m, to);
                g.estimates.push_back(m);
                g.succ.emplace_back(fsa.symbol_count(), UINT32_MAX);
                seq_of.push_back(seq);
            } else {
                to = it->second;
            }
            g.succ[v][s] = to;
        }
    }
    return g;
}

// Simple-cycle search by DFS restricted to flagged estimates.
bool cycle_through_flagged(const EstimateGraph& g, const std::vector<char>& flagged) {
    const std::size_t n = g.estimates.size();
    std::vector<char> on_path(n, 0);
    bool found = false;
    std::uint32_t start = 0;
    auto dfs = [&](auto&& self, std::uint32_t v) -> void {
        if (found) return;
        on_path[v] = 1;
        for (std::uint32_t to : g.succ[v]) {
            if (to == UINT32_MAX || !flagged[to]) continue;
            if (to == start) { found = true; return; }
            if (to > start && !on_path[to]) self(self, to);
        }
        on_path[v] = 0;
    };
    for (start = 0; start < n && !found; ++start) {
        if (!flagged[start]) continue;
        std::fill(on_path.begin(), on_path.end(), 0);
        dfs(dfs, start);
    }
    return found;
}

template <typename Ambiguous>
NaiveResult naive_check(const Fsa& fsa, Ambiguous&& ambiguous) {
    if (fsa.state_count() > kMaxStates) throw TooLarge(fsa.state_count());

    NaiveResult result;
    EstimateGraph g = enumerate_estimates(fsa);

    std::vector<char> flagged(g.estimates.size(), 0);
    for (std::size_t v = 0; v < g.estimates.size(); ++v)
        flagged[v] = ambiguous(g.estimates[v]) ? 1 : 0;

    for (std::size_t v = 0; v < g.estimates.size() && !result.cond1; ++v) {
        if (!flagged[v]) continue;
        for (StateId x : g.estimates[v])
            if (has_silent_lasso(fsa, x)) { result.cond1 = true; break; }
    }
    result.cond2 = cycle_through_flagged(g, flagged);
    result.property_holds = !(result.cond1 || result.cond2);
    return result;
}

}  // namespace

NaiveResult naive_spd(const Fsa& fsa) {
    return naive_check(fsa, [](const StateSet& m) { return m.size() > 1; });
}

NaiveResult naive_spdd(const Fsa& fsa, const SpecPairs& spec) {
    return naive_check(fsa, [&](const StateSet& m) {
        for (const auto& [a, b] : spec)
            if (m.contains(a) && m.contains(b)) return true;
        return false;
    });
}

}  // namespace spdet
