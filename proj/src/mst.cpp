#include "l1mst/mst.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace l1mst {

MstResult kruskal(int n, EdgeList edges) {
    std::sort(edges.begin(), edges.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    MstResult res;
    if (n == 0) return res;
    DisjointSetUnion dsu(n);
    int remaining = n - 1;
    for (const CandidateEdge& e : edges) {
        assert(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n);
        if (remaining == 0) break;
        if (dsu.unite(e.u, e.v)) {
            res.edges.push_back(e);
            res.total_weight += e.weight;
            --remaining;
        }
    }
    res.components = n - static_cast<int>(res.edges.size());
    return res;
}

MstResult prim_dense_oracle(const std::vector<Point>& points) {
    MstResult res;
    const int n = static_cast<int>(points.size());
    if (n == 0) return res;

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best(n, kInf);
    std::vector<int> link(n, -1);
    std::vector<bool> done(n, false);

    best[0] = 0.0;
    for (int iter = 0; iter < n; ++iter) {
        int u = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && (u == -1 || best[v] < best[u])) u = v;
        done[u] = true;
        if (link[u] != -1) {
            int a = std::min(u, link[u]), b = std::max(u, link[u]);
            res.edges.push_back({a, b, best[u]});
            res.total_weight += best[u];
        }
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            double w = l1_distance(points[u], points[v]);
            if (w < best[v]) {
                best[v] = w;
                link[v] = u;
            }
        }
    }
    std::sort(res.edges.begin(), res.edges.end(),
              [](const CandidateEdge& a, const CandidateEdge& b) {
                  if (a.weight != b.weight) return a.weight < b.weight;
                  if (a.u != b.u) return a.u < b.u;
                  return a.v < b.v;
              });
    res.components = 1;
    return res;
}

}  // namespace l1mst
