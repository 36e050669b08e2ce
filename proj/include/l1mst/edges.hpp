#pragma once

#include <vector>

namespace l1mst {

// Weighted edge over point positions within an instance.
struct CandidateEdge {
    int u = -1;
    int v = -1;
    double weight = 0.0;

    bool operator==(const CandidateEdge& o) const {
        return u == o.u && v == o.v && weight == o.weight;
    }
};

using EdgeList = std::vector<CandidateEdge>;

}  // namespace l1mst
