#include "pennycdv/graph.hpp"

#include <algorithm>
#include <queue>

#include "pennycdv/errors.hpp"

namespace pennycdv {

int Graph::edge_count() const {
    int twice = 0;
    for (const auto& nb : adj_) twice += static_cast<int>(nb.size());
    return twice / 2;
}

void Graph::add_edge(int i, int j) {
    const int n = node_count();
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw ParameterError("Graph::add_edge: node index out of range");
    if (i == j) throw ParameterError("Graph::add_edge: self-loop");
    if (has_edge(i, j)) return;
    adj_[i].insert(std::lower_bound(adj_[i].begin(), adj_[i].end(), j), j);
    adj_[j].insert(std::lower_bound(adj_[j].begin(), adj_[j].end(), i), i);
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    const auto& nb = adj_[i];
    return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < node_count(); ++i)
        for (int j : adj_[i])
            if (j > i) out.emplace_back(i, j);
    return out;
}

Graph Graph::induced(const std::vector<int>& nodes) const {
    Graph h(static_cast<int>(nodes.size()));
    for (size_t a = 0; a < nodes.size(); ++a)
        for (size_t b = a + 1; b < nodes.size(); ++b)
            if (has_edge(nodes[a], nodes[b]))
                h.add_edge(static_cast<int>(a), static_cast<int>(b));
    return h;
}

Graph complement(const Graph& g) {
    const int n = g.node_count();
    Graph c(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j)) c.add_edge(i, j);
    return c;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.node_count();
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(n, false);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int v : g.neighbors(u)) {
                if (!seen[v]) {
                    seen[v] = true;
                    q.push(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

DegeneracyResult degeneracy_ordering(const Graph& g, int k) {
    const int n = g.node_count();
    std::vector<int> deg(n);
    std::vector<bool> live(n, true);
    for (int i = 0; i < n; ++i) deg[i] = g.degree(i);

    DegeneracyResult res;
    res.order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int i = 0; i < n; ++i) {
            if (!live[i] || deg[i] > k) continue;
            if (pick < 0 || deg[i] < deg[pick]) pick = i;
        }
        if (pick < 0) {
            for (int i = 0; i < n; ++i)
                if (live[i]) res.stuck.push_back(i);
            res.ok = false;
            res.order.clear();
            return res;
        }
        live[pick] = false;
        res.order.push_back(pick);
        for (int v : g.neighbors(pick))
            if (live[v]) --deg[v];
    }
    res.ok = true;
    return res;
}

namespace {

bool component_is_path(const Graph& g, const std::vector<int>& comp) {
    if (comp.size() == 1) return true;
    int deg1 = 0;
    int edges2 = 0;
    for (int u : comp) {
        const int d = g.degree(u);
        if (d > 2) return false;
        if (d == 1) ++deg1;
        edges2 += d;
    }
    // connected by construction; a path has size-1 edges and two endpoints
    return deg1 == 2 && edges2 / 2 == static_cast<int>(comp.size()) - 1;
}

}  // namespace

GraphFamily classify_family(const Graph& g) {
    const int n = g.node_count();
    if (n < 1) throw ParameterError("classify_family: empty graph");
    if (n == 1) return GraphFamily::Path;

    const auto comps = connected_components(g);
    if (comps.size() == 1) {
        bool two_regular = n >= 3;
        for (int i = 0; i < n && two_regular; ++i) two_regular = (g.degree(i) == 2);
        if (two_regular) return GraphFamily::Cycle;
        if (component_is_path(g, comps[0])) return GraphFamily::Path;
        return GraphFamily::Other;
    }
    for (const auto& c : comps)
        if (!component_is_path(g, c)) return GraphFamily::Other;
    return GraphFamily::UnionOfPaths;
}

const char* family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::Path: return "path";
        case GraphFamily::UnionOfPaths: return "union-of-paths";
        case GraphFamily::Cycle: return "cycle";
        case GraphFamily::Other: return "other";
    }
    return "?";
}

ForbiddenSubgraphFlags forbidden_subgraph_check(const Graph& g) {
    const int n = g.node_count();
    ForbiddenSubgraphFlags flags;

    for (int i = 0; i < n; ++i)
        if (g.degree(i) > 6) flags.maxdeg_exceeds_6 = true;

    // K4: an edge {u,v} plus an adjacent pair among their common neighbors.
    for (int u = 0; u < n && !flags.has_k4; ++u) {
        for (int v : g.neighbors(u)) {
            if (v <= u) continue;
            std::vector<int> common;
            std::set_intersection(g.neighbors(u).begin(), g.neighbors(u).end(),
                                  g.neighbors(v).begin(), g.neighbors(v).end(),
                                  std::back_inserter(common));
            for (size_t a = 0; a < common.size() && !flags.has_k4; ++a)
                for (size_t b = a + 1; b < common.size(); ++b)
                    if (g.has_edge(common[a], common[b])) {
                        flags.has_k4 = true;
                        break;
                    }
            if (flags.has_k4) break;
        }
    }

    // K_{2,3} subgraph exists iff some pair of nodes has >= 3 common neighbors.
    for (int u = 0; u < n && !flags.has_k23; ++u) {
        for (int v = u + 1; v < n; ++v) {
            std::vector<int> common;
            std::set_intersection(g.neighbors(u).begin(), g.neighbors(u).end(),
                                  g.neighbors(v).begin(), g.neighbors(v).end(),
                                  std::back_inserter(common));
            if (common.size() >= 3) {
                flags.has_k23 = true;
                break;
            }
        }
    }
    return flags;
}

}  // namespace pennycdv
