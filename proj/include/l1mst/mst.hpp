// Minimum spanning tree of a sparse edge list, plus the dense reference oracle.
#pragma once

#include <vector>

#include "l1mst/edges.hpp"
#include "l1mst/geometry.hpp"

namespace l1mst {

struct DisjointSetUnion {
    std::vector<int> parent;
    std::vector<int> rank_;

    explicit DisjointSetUnion(int n) : parent(n), rank_(n, 0) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];  // path halving
            x = parent[x];
        }
        return x;
    }

    // Merges the two sets; returns false when already joined.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }
};

struct MstResult {
    EdgeList edges;             // chosen tree edges, sorted by (weight, u, v)
    double total_weight = 0.0;
    int components = 0;         // 1 for connected input; more for a forest
};

// Kruskal over an explicit edge list. Ties are broken by (weight, u, v),
// so identical inputs produce identical trees. Disconnected inputs yield
// a minimum spanning forest.
MstResult kruskal(int n, EdgeList edges);

// Exact MST of the complete l_1 graph via array-based Prim, O(n^2).
// Ground truth for all randomized comparisons.
MstResult prim_dense_oracle(const std::vector<Point>& points);

}  // namespace l1mst
