#include "l1mst/dominance_index.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace l1mst {

void DominanceIndex::build(int dim, std::span<const double> tcoords,
                           std::span<const int> point_ids, std::span<const double> keys,
                           IndexBackend backend) {
    if (dim < 1) throw std::invalid_argument("dominance index needs dimension >= 1");
    n_ = point_ids.size();
    if (tcoords.size() != n_ * static_cast<std::size_t>(dim) || keys.size() != n_)
        throw std::invalid_argument("mismatched record arrays");
    dim_ = dim;
    tc_ = tcoords.data();
    ids_ = point_ids.data();
    keys_ = keys.data();
    backend_ = backend;
    live_ = n_;
    alive_.assign(n_, 1);

    nodes_.clear();
    trees_.clear();
    tree_coords_.clear();
    lists_.clear();
    slot_coord_.clear();
    slot_pos_.clear();
    slot_prev_.clear();
    slot_next_.clear();
    slot_list_.clear();
    reg_off_.clear();
    reg_slot_.clear();
    root_structure_ = -1;

    if (backend_ == IndexBackend::Reference || n_ == 0) return;

    rank_scratch_.resize(n_);
    std::vector<int> members = take_buffer();
    members.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) members[i] = static_cast<int>(i);
    root_structure_ = build_structure(0, members);
    give_buffer(std::move(members));
    build_registration();
}

void DominanceIndex::build(const std::vector<TransformedPoint>& points, IndexBackend backend) {
    int dim = points.empty() ? 1 : static_cast<int>(points.front().tcoords.size());
    owned_tc_.clear();
    owned_ids_.clear();
    owned_keys_.clear();
    for (const TransformedPoint& p : points) {
        if (static_cast<int>(p.tcoords.size()) != dim)
            throw std::invalid_argument("mixed dimensions in dominance index build");
        owned_tc_.insert(owned_tc_.end(), p.tcoords.begin(), p.tcoords.end());
        owned_ids_.push_back(p.point_index);
        owned_keys_.push_back(p.key);
    }
    build(dim, owned_tc_, owned_ids_, owned_keys_, backend);
}

std::vector<int> DominanceIndex::take_buffer() {
    if (buffer_pool_.empty()) return {};
    std::vector<int> v = std::move(buffer_pool_.back());
    buffer_pool_.pop_back();
    v.clear();
    return v;
}

void DominanceIndex::give_buffer(std::vector<int>&& buf) { buffer_pool_.push_back(std::move(buf)); }

int DominanceIndex::build_structure(int level, std::vector<int>& members) {
    std::sort(members.begin(), members.end(), [&](int a, int b) {
        double ca = tc(a, level), cb = tc(b, level);
        if (ca != cb) return ca < cb;
        return a < b;
    });
    if (level == dim_ - 1) return make_leaflist(members);

    const int m = static_cast<int>(members.size());
    const int tree_id = static_cast<int>(trees_.size());
    trees_.push_back(SubTree{level, -1, static_cast<int>(tree_coords_.size()), m});
    for (int pos : members) tree_coords_.push_back(tc(pos, level));
    int root = make_nodes(0, m);
    trees_[tree_id].root = root;

    if (level == dim_ - 2) {
        for (int i = 0; i < m; ++i) rank_scratch_[members[i]] = i;
        std::vector<int> carry = take_buffer();
        carry.assign(members.begin(), members.end());
        const int last = dim_ - 1;
        std::sort(carry.begin(), carry.end(), [&](int a, int b) {
            double ca = tc(a, last), cb = tc(b, last);
            if (ca != cb) return ca < cb;
            return a < b;
        });
        route_lists(root, carry, 0);
        give_buffer(std::move(carry));
    } else {
        assign_subs(root, level, members);
    }
    return tree_id;
}

int DominanceIndex::make_leaflist(std::span<const int> members) {
    const int list_id = static_cast<int>(lists_.size());
    const int slot0 = static_cast<int>(slot_coord_.size());
    const int count = static_cast<int>(members.size());
    const int last = dim_ - 1;
    for (int i = 0; i < count; ++i) {
        int pos = members[i];
        slot_coord_.push_back(tc(pos, last));
        slot_pos_.push_back(pos);
        slot_prev_.push_back(i == 0 ? -1 : slot0 + i - 1);
        slot_next_.push_back(i == count - 1 ? -1 : slot0 + i + 1);
        slot_list_.push_back(list_id);
    }
    lists_.push_back(LeafList{count == 0 ? -1 : slot0, count == 0 ? -1 : slot0 + count - 1, count});
    return list_id;
}

int DominanceIndex::make_nodes(int lo, int hi) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{lo, hi, -1, -1, -1});
    if (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        int l = make_nodes(lo, mid);
        int r = make_nodes(mid, hi);
        nodes_[id].left = l;
        nodes_[id].right = r;
    }
    return id;
}

void DominanceIndex::assign_subs(int node_id, int level, const std::vector<int>& members) {
    const int lo = nodes_[node_id].lo, hi = nodes_[node_id].hi;
    const int left = nodes_[node_id].left, right = nodes_[node_id].right;
    std::vector<int> buf = take_buffer();
    buf.assign(members.begin() + lo, members.begin() + hi);
    int sub = build_structure(level + 1, buf);
    give_buffer(std::move(buf));
    nodes_[node_id].sub = sub;  // nodes_ may have grown; index again
    if (left != -1) {
        assign_subs(left, level, members);
        assign_subs(right, level, members);
    }
}

void DominanceIndex::route_lists(int node_id, std::span<const int> carry, int depth) {
    nodes_[node_id].sub = make_leaflist(carry);
    const int left = nodes_[node_id].left, right = nodes_[node_id].right;
    if (left == -1) return;
    const int mid = nodes_[node_id].lo + (nodes_[node_id].hi - nodes_[node_id].lo) / 2;
    std::vector<int> left_buf = take_buffer();
    std::vector<int> right_buf = take_buffer();
    for (int pos : carry) {
        if (rank_scratch_[pos] < mid)
            left_buf.push_back(pos);
        else
            right_buf.push_back(pos);
    }
    route_lists(left, left_buf, depth + 1);
    route_lists(right, right_buf, depth + 1);
    give_buffer(std::move(left_buf));
    give_buffer(std::move(right_buf));
}

void DominanceIndex::build_registration() {
    reg_off_.assign(n_ + 1, 0);
    for (int pos : slot_pos_) ++reg_off_[pos + 1];
    for (std::size_t i = 1; i <= n_; ++i) reg_off_[i] += reg_off_[i - 1];
    reg_slot_.resize(slot_pos_.size());
    std::vector<int> cursor = take_buffer();
    cursor.assign(reg_off_.begin(), reg_off_.end() - 1);
    for (int s = 0; s < static_cast<int>(slot_pos_.size()); ++s)
        reg_slot_[cursor[slot_pos_[s]]++] = s;
    give_buffer(std::move(cursor));
}

void DominanceIndex::extract_positions(std::span<const double> q, double eps,
                                       int exclude_point_index, std::vector<int>& out) {
    if (n_ == 0) return;
    if (q.size() != static_cast<std::size_t>(dim_))
        throw std::invalid_argument("query dimension mismatch");

    if (backend_ == IndexBackend::Reference) {
        for (int pos = 0; pos < static_cast<int>(n_); ++pos) {
            if (!alive_[pos] || ids_[pos] == exclude_point_index) continue;
            bool dominates = true;
            for (int k = 0; k < dim_ && dominates; ++k)
                if (tc(pos, k) < q[k] - eps) dominates = false;
            if (dominates) {
                out.push_back(pos);
                alive_[pos] = 0;
                --live_;
            }
        }
        return;
    }

    double thresholds_stack[8];
    std::vector<double> thresholds_heap;
    std::span<double> thresholds;
    if (dim_ <= 8) {
        thresholds = {thresholds_stack, static_cast<std::size_t>(dim_)};
    } else {
        thresholds_heap.resize(dim_);
        thresholds = thresholds_heap;
    }
    for (int k = 0; k < dim_; ++k) thresholds[k] = q[k] - eps;

    if (dim_ == 1)
        walk_list(root_structure_, thresholds[0], exclude_point_index, out);
    else
        query_tree(root_structure_, thresholds, exclude_point_index, out);
}

void DominanceIndex::query_tree(int tree_id, std::span<const double> thresholds, int exclude,
                                std::vector<int>& out) {
    const SubTree& tr = trees_[tree_id];
    const double* coords = tree_coords_.data() + tr.coord0;
    int pos0 = static_cast<int>(std::lower_bound(coords, coords + tr.m, thresholds[tr.level]) -
                                coords);
    if (pos0 >= tr.m) return;
    collect_suffix(tr, tr.root, pos0, thresholds, exclude, out);
}

void DominanceIndex::collect_suffix(const SubTree& tr, int node_id, int pos0,
                                    std::span<const double> thresholds, int exclude,
                                    std::vector<int>& out) {
    const Node& nd = nodes_[node_id];
    if (nd.lo >= pos0) {
        if (tr.level == dim_ - 2)
            walk_list(nd.sub, thresholds[dim_ - 1], exclude, out);
        else
            query_tree(nd.sub, thresholds, exclude, out);
        return;
    }
    if (nd.hi <= pos0 || nd.left == -1) return;
    collect_suffix(tr, nd.left, pos0, thresholds, exclude, out);
    collect_suffix(tr, nd.right, pos0, thresholds, exclude, out);
}

void DominanceIndex::walk_list(int list_id, double threshold, int exclude,
                               std::vector<int>& out) {
    LeafList& list = lists_[list_id];
    if (list.live == 0) return;
    int cur = list.tail;
    while (cur != -1 && slot_coord_[cur] >= threshold) {
        int prev = slot_prev_[cur];
        int pos = slot_pos_[cur];
        if (alive_[pos] && ids_[pos] != exclude) {
            out.push_back(pos);
            alive_[pos] = 0;
            --live_;
            unlink_everywhere(pos);
        }
        cur = prev;
    }
}

void DominanceIndex::unlink_everywhere(int pos) {
    for (int i = reg_off_[pos]; i < reg_off_[pos + 1]; ++i) {
        int s = reg_slot_[i];
        LeafList& list = lists_[slot_list_[s]];
        int p = slot_prev_[s], nx = slot_next_[s];
        if (p == -1)
            list.head = nx;
        else
            slot_next_[p] = nx;
        if (nx == -1)
            list.tail = p;
        else
            slot_prev_[nx] = p;
        --list.live;
    }
}

std::vector<TransformedPoint> DominanceIndex::extract_dominating(std::span<const double> q,
                                                                 double eps,
                                                                 int exclude_point_index) {
    std::vector<int> positions;
    extract_positions(q, eps, exclude_point_index, positions);
    std::vector<TransformedPoint> res;
    res.reserve(positions.size());
    for (int pos : positions) {
        TransformedPoint tp;
        auto c = tcoords_of(pos);
        tp.tcoords.assign(c.begin(), c.end());
        tp.point_index = ids_[pos];
        tp.key = keys_[pos];
        res.push_back(std::move(tp));
    }
    return res;
}

}  // namespace l1mst
