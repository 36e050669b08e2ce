// Deletion-only dominance reporting: store transformed points, then
// repeatedly extract (report + remove) every live point componentwise >= a
// query. Two backends behind one contract: a linear-scan reference and a
// layered range tree whose last dimension is a doubly-linked live list, so
// each point is reported and unlinked exactly once.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "l1mst/geometry.hpp"

namespace l1mst {

struct TransformedPoint {
    std::vector<double> tcoords;  // coordinates after the pass's matrix
    int point_index = -1;
    double key = 0.0;             // sweep key of the original point
};

enum class IndexBackend { Reference, Tree };

class DominanceIndex {
  public:
    DominanceIndex() = default;

    // Core build. Borrows tcoords/ids/keys, which must outlive the index;
    // internal arenas are reused across rebuilds.
    void build(int dim, std::span<const double> tcoords, std::span<const int> point_ids,
               std::span<const double> keys, IndexBackend backend);

    // Convenience build that copies the records into the index.
    void build(const std::vector<TransformedPoint>& points, IndexBackend backend);

    // Reports every live point with tcoords[k] >= q[k] - eps for all k and
    // removes them, except the record whose point id equals
    // exclude_point_index, which is neither reported nor removed (a sweep
    // query must not consume its own record). Appends record positions.
    void extract_positions(std::span<const double> q, double eps, int exclude_point_index,
                           std::vector<int>& out);

    std::vector<TransformedPoint> extract_dominating(std::span<const double> q, double eps,
                                                     int exclude_point_index = -1);

    std::size_t live_count() const { return live_; }
    IndexBackend backend() const { return backend_; }
    int dim() const { return dim_; }
    std::size_t size() const { return n_; }

    int point_id(int pos) const { return ids_[pos]; }
    double key_of(int pos) const { return keys_[pos]; }
    std::span<const double> tcoords_of(int pos) const {
        return {tc_ + static_cast<std::size_t>(pos) * dim_, static_cast<std::size_t>(dim_)};
    }

  private:
    double tc(int pos, int k) const { return tc_[static_cast<std::size_t>(pos) * dim_ + k]; }

    // --- tree backend internals -------------------------------------------
    struct Node {
        int lo, hi;        // member range within the owning structure
        int left, right;   // child node ids, -1 at leaves
        int sub;           // next-level tree id, or leaf list id at level dim-2
    };
    struct SubTree {
        int level;
        int root;
        int coord0;  // slice of tree_coords_
        int m;
    };
    struct LeafList {
        int head, tail;  // slot ids, -1 when empty
        int live;
    };

    std::vector<int> take_buffer();
    void give_buffer(std::vector<int>&& buf);

    int build_structure(int level, std::vector<int>& members);
    int make_leaflist(std::span<const int> members);
    int make_nodes(int lo, int hi);
    void assign_subs(int node_id, int level, const std::vector<int>& members);
    void route_lists(int node_id, std::span<const int> carry, int depth);
    void build_registration();

    void query_tree(int tree_id, std::span<const double> thresholds, int exclude,
                    std::vector<int>& out);
    void collect_suffix(const SubTree& tr, int node_id, int pos0, std::span<const double> thresholds,
                        int exclude, std::vector<int>& out);
    void walk_list(int list_id, double threshold, int exclude, std::vector<int>& out);
    void unlink_everywhere(int pos);

    // borrowed record data
    const double* tc_ = nullptr;
    const int* ids_ = nullptr;
    const double* keys_ = nullptr;
    std::size_t n_ = 0;
    int dim_ = 0;
    IndexBackend backend_ = IndexBackend::Reference;
    std::size_t live_ = 0;
    std::vector<std::uint8_t> alive_;

    // owned copies for the convenience build
    std::vector<double> owned_tc_;
    std::vector<int> owned_ids_;
    std::vector<double> owned_keys_;

    // tree arenas, reused across builds
    std::vector<Node> nodes_;
    std::vector<SubTree> trees_;
    std::vector<double> tree_coords_;
    std::vector<LeafList> lists_;
    std::vector<double> slot_coord_;
    std::vector<int> slot_pos_, slot_prev_, slot_next_, slot_list_;
    std::vector<int> reg_off_, reg_slot_;  // record position -> its slots
    std::vector<int> rank_scratch_;
    std::vector<std::vector<int>> buffer_pool_;
    int root_structure_ = -1;
};

}  // namespace l1mst
