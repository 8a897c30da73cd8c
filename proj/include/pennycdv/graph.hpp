#ifndef PENNYCDV_GRAPH_HPP
#define PENNYCDV_GRAPH_HPP

#include <utility>
#include <vector>

namespace pennycdv {

// Undirected simple graph on nodes 0..n-1 with sorted neighbor lists.
// No self-loops; adjacency is kept symmetric by construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}

    int node_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const;
    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    int degree(int i) const { return static_cast<int>(adj_[i].size()); }
    const std::vector<int>& neighbors(int i) const { return adj_[i]; }

    /// All edges {i, j} with i < j, lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    /// Induced subgraph on `nodes` (taken in the given order; node k of the
    /// result corresponds to nodes[k]).
    Graph induced(const std::vector<int>& nodes) const;

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }

private:
    std::vector<std::vector<int>> adj_;
};

Graph complement(const Graph& g);

/// Partition of the nodes into connected components, each sorted, the list
/// ordered by smallest contained node.
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Result of k-degeneracy peeling. On success `order` lists the nodes so
/// that each has at most k neighbors among the ones after it; on failure
/// `stuck` is the induced subgraph in which every degree exceeds k.
struct DegeneracyResult {
    bool ok = false;
    std::vector<int> order;
    std::vector<int> stuck;
};

/// Peel nodes of live degree <= k, smallest degree first, ties broken by
/// smallest node index.
DegeneracyResult degeneracy_ordering(const Graph& g, int k);

enum class GraphFamily { Path, UnionOfPaths, Cycle, Other };

/// Path: connected with exactly two endpoints of degree 1 and the rest of
/// degree 2 (n = 1 and n = 2 count as paths). UnionOfPaths: >= 2 components,
/// every one a path. Cycle: connected and 2-regular.
GraphFamily classify_family(const Graph& g);

const char* family_name(GraphFamily f);

struct ForbiddenSubgraphFlags {
    bool has_k4 = false;
    bool has_k23 = false;
    bool maxdeg_exceeds_6 = false;
    bool any() const { return has_k4 || has_k23 || maxdeg_exceeds_6; }
};

/// Exhaustive search for K4 and K_{2,3} subgraphs plus a degree scan.
/// All three flags are false for every valid penny contact graph.
ForbiddenSubgraphFlags forbidden_subgraph_check(const Graph& g);

}  // namespace pennycdv

#endif
