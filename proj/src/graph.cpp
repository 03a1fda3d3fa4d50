#include "spdet/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace spdet {

void DiGraph::add_edge(std::uint32_t from, std::uint32_t to, std::int64_t label) {
    if (from >= adj_.size() || to >= adj_.size())
        throw std::out_of_range("edge endpoint out of range");
    adj_[from].push_back(Edge{to, label});
    ++edge_count_;
}

SccPartition tarjan_scc(const DiGraph& g) {
    const std::size_t n = g.node_count();
    constexpr std::uint32_t kUnvisited = 0xffffffffu;

    SccPartition result;
    result.component_of.assign(n, kUnvisited);

    std::vector<std::uint32_t> index(n, kUnvisited);
    std::vector<std::uint32_t> lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            auto edges = g.out(v);
            while (ei < edges.size()) {
                std::uint32_t w = edges[ei].to;
                ++ei;
                if (index[w] == kUnvisited) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::uint32_t comp = result.component_count++;
                for (;;) {
                    std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.component_of[w] = comp;
                    if (w == v) break;
                }
            }
            std::uint32_t done = v;
            call.pop_back();
            if (!call.empty())
                lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[done]);
        }
    }
    return result;
}

std::optional<std::vector<std::uint32_t>> cycle_within(
    const DiGraph& g, const std::function<bool(std::uint32_t)>& keep) {
    const std::size_t n = g.node_count();
    std::vector<char> kept(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) kept[v] = keep(v) ? 1 : 0;

    DiGraph sub(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!kept[v]) continue;
        for (const auto& e : g.out(v))
            if (kept[e.to]) sub.add_edge(v, e.to);
    }

    SccPartition scc = tarjan_scc(sub);
    for (std::uint32_t u = 0; u < n; ++u) {
        if (!kept[u]) continue;
        for (const auto& e : sub.out(u)) {
            if (scc.component_of[e.to] != scc.component_of[u]) continue;
            // Internal edge u -> e.to; close the walk with a path back to u.
            if (e.to == u) return std::vector<std::uint32_t>{u};
            std::vector<std::int64_t> parent(n, -2);
            std::deque<std::uint32_t> work{e.to};
            parent[e.to] = -1;
            while (!work.empty()) {
                std::uint32_t v = work.front();
                work.pop_front();
                if (v == u) break;
                for (const auto& f : sub.out(v)) {
                    if (scc.component_of[f.to] != scc.component_of[u]) continue;
                    if (parent[f.to] == -2) {
                        parent[f.to] = v;
                        work.push_back(f.to);
                    }
                }
            }
            std::vector<std::uint32_t> path;
            for (std::uint32_t v = u;; v = static_cast<std::uint32_t>(parent[v])) {
                path.push_back(v);
                if (parent[v] == -1) break;
            }
            std::reverse(path.begin(), path.end());  // e.to ... u
            std::vector<std::uint32_t> walk{u};
            for (std::size_t i = 0; i + 1 < path.size(); ++i) walk.push_back(path[i]);
            return walk;
        }
    }
    return std::nullopt;
}

std::vector<std::uint32_t> reachable_from(const DiGraph& g,
                                          std::span<const std::uint32_t> sources) {
    std::vector<char> seen(g.node_count(), 0);
    std::deque<std::uint32_t> work;
    for (std::uint32_t s : sources)
        if (!seen.at(s)) { seen[s] = 1; work.push_back(s); }
    std::vector<std::uint32_t> out;
    while (!work.empty()) {
        std::uint32_t v = work.front();
        work.pop_front();
        out.push_back(v);
        for (const auto& e : g.out(v))
            if (!seen[e.to]) { seen[e.to] = 1; work.push_back(e.to); }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace spdet
