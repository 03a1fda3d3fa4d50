// graph.hpp -- directed-graph utilities shared by the verification
// procedures: strongly connected components and predicate-restricted
// cycle search.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace spdet {

class DiGraph {
public:
    struct Edge {
        std::uint32_t to;
        std::int64_t label;  // payload for witness reconstruction, -1 if unused
    };

    explicit DiGraph(std::size_t node_count) : adj_(node_count) {}

    void add_edge(std::uint32_t from, std::uint32_t to, std::int64_t label = -1);

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::span<const Edge> out(std::uint32_t v) const { return adj_.at(v); }

private:
    std::vector<std::vector<Edge>> adj_;
    std::size_t edge_count_ = 0;
};

struct SccPartition {
    std::vector<std::uint32_t> component_of;  // node -> component id
    std::uint32_t component_count = 0;        // ids are in reverse topological order
};

SccPartition tarjan_scc(const DiGraph& g);

/// Searches for a closed walk visiting only nodes accepted by `keep`.
/// Returns the walk as a node sequence (each consecutive pair, and
/// last->first, is an edge), or nullopt if the kept subgraph is acyclic.
std::optional<std::vector<std::uint32_t>> cycle_within(
    const DiGraph& g, const std::function<bool(std::uint32_t)>& keep);

/// Forward closure from the given source nodes; sorted node set.
std::vector<std::uint32_t> reachable_from(const DiGraph& g,
                                          std::span<const std::uint32_t> sources);

}  // namespace spdet
