#include "l1mst/cone_family.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "l1mst/rng.hpp"

namespace l1mst {

namespace {

// Squared chord between two unit vectors; monotone in their angle.
double pair_chord2(std::span<const double> gens, int d, int i, int j) {
    double dot = 0.0;
    for (int k = 0; k < d; ++k) dot += gens[i * d + k] * gens[j * d + k];
    return 2.0 - 2.0 * dot;
}

// Widest generator pair by squared chord; first pair in lex order on ties.
void widest_pair(std::span<const double> gens, int d, int& bi, int& bj, double& max_chord2) {
    bi = bj = -1;
    max_chord2 = -1.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            double c2 = pair_chord2(gens, d, i, j);
            if (c2 > max_chord2) {
                max_chord2 = c2;
                bi = i;
                bj = j;
            }
        }
}

// Normalized mid-direction of generators i and j, written to out[d].
void mid_direction(std::span<const double> gens, int d, int i, int j, double* out) {
    double norm2 = 0.0;
    for (int k = 0; k < d; ++k) {
        out[k] = gens[i * d + k] + gens[j * d + k];
        norm2 += out[k] * out[k];
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (int k = 0; k < d; ++k) out[k] *= inv;
}

// Inverse of the generator column matrix: rows of `gens` are the generators,
// and we invert E with E[r][c] = gens[c*d + r]. Gauss-Jordan with partial
// pivoting; d stays tiny so this is plenty.
void invert_generator_matrix(std::span<const double> gens, int d, std::vector<double>& out) {
    std::vector<double> a(static_cast<std::size_t>(d) * 2 * d, 0.0);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) a[r * 2 * d + c] = gens[c * d + r];
        a[r * 2 * d + d + r] = 1.0;
    }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r * 2 * d + col]) > std::abs(a[piv * 2 * d + col])) piv = r;
        if (std::abs(a[piv * 2 * d + col]) < 1e-12)
            throw FamilyError("singular generator matrix during cone construction");
        if (piv != col)
            for (int c = 0; c < 2 * d; ++c) std::swap(a[piv * 2 * d + c], a[col * 2 * d + c]);
        double inv = 1.0 / a[col * 2 * d + col];
        for (int c = 0; c < 2 * d; ++c) a[col * 2 * d + c] *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            double f = a[r * 2 * d + col];
            if (f == 0.0) continue;
            for (int c = 0; c < 2 * d; ++c) a[r * 2 * d + c] -= f * a[col * 2 * d + c];
        }
    }
    out.resize(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out[r * d + c] = a[r * 2 * d + d + c];
}

double max_abs_inverse_deviation(std::span<const double> matrix, std::span<const double> gens,
                                 int d) {
    // |A * E - I| with E columns = generator rows of `gens`.
    double worst = 0.0;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += matrix[r * d + k] * gens[c * d + k];
            worst = std::max(worst, std::abs(s - (r == c ? 1.0 : 0.0)));
        }
    return worst;
}

struct WalkNode {
    std::vector<double> gens;  // d*d, row j = generator j
    int depth = 0;
};

// Depth-first subdivision of the positive orthant cone. Calls visit(gens,
// depth, max_chord2) at each leaf; returns false early when visit does.
template <typename Visitor>
bool walk_positive_orthant(int d, double chord2_threshold, std::vector<double> root_gens,
                           int root_depth, Visitor&& visit) {
    std::vector<WalkNode> stack;
    stack.push_back({std::move(root_gens), root_depth});
    std::vector<double> mid(d);
    while (!stack.empty()) {
        WalkNode node = std::move(stack.back());
        stack.pop_back();
        int bi, bj;
        double max_c2 = 0.0;
        if (d > 1) widest_pair(node.gens, d, bi, bj, max_c2);
        if (d == 1 || max_c2 < chord2_threshold) {
            if (!visit(node.gens, node.depth, max_c2)) return false;
            continue;
        }
        mid_direction(node.gens, d, bi, bj, mid.data());
        WalkNode right{node.gens, node.depth + 1};
        std::copy(mid.begin(), mid.end(), right.gens.begin() + bj * d);
        WalkNode left{std::move(node.gens), node.depth + 1};
        std::copy(mid.begin(), mid.end(), left.gens.begin() + bi * d);
        stack.push_back(std::move(right));  // explored second
        stack.push_back(std::move(left));   // explored first
    }
    return true;
}

std::vector<double> axis_generators(int d) {
    std::vector<double> g(static_cast<std::size_t>(d) * d, 0.0);
    for (int j = 0; j < d; ++j) g[j * d + j] = 1.0;
    return g;
}

double chord2_of_angle(double angle) {
    double s = std::sin(angle / 2.0);
    return 4.0 * s * s;
}

}  // namespace

double default_max_generator_angle(int d) {
    return std::asin(1.0 / (2.0 * std::pow(static_cast<double>(d), 1.5)));
}

ConeFamily::ConeFamily(int d, std::vector<Cone> positive_orthant_cones) {
    if (d < 1) throw FamilyError("dimension must be at least 1");
    d_ = d;
    k_ = static_cast<int>(positive_orthant_cones.size());
    alphas_ = SignVector::all(d);
    base_matrices_.reserve(static_cast<std::size_t>(k_) * d * d);
    base_generators_.reserve(static_cast<std::size_t>(k_) * d * d);
    for (const Cone& c : positive_orthant_cones) {
        base_matrices_.insert(base_matrices_.end(), c.matrix.begin(), c.matrix.end());
        for (const auto& g : c.generators)
            base_generators_.insert(base_generators_.end(), g.begin(), g.end());
    }
}

Cone ConeFamily::cone(int alpha_index, int ordinal) const {
    const SignVector& alpha = alphas_.at(alpha_index);
    Cone c;
    c.alpha = alpha;
    c.ordinal = ordinal;
    c.matrix.resize(static_cast<std::size_t>(d_) * d_);
    auto bm = base_matrix(ordinal);
    auto bg = base_generators(ordinal);
    // Flipping column c by alpha_c maps the positive-orthant cone onto the
    // alpha orthant; (-alpha, i) comes out as the exact negation of (alpha, i).
    for (int r = 0; r < d_; ++r)
        for (int col = 0; col < d_; ++col)
            c.matrix[r * d_ + col] = bm[r * d_ + col] * alpha.signs[col];
    c.generators.assign(d_, std::vector<double>(d_));
    for (int j = 0; j < d_; ++j)
        for (int col = 0; col < d_; ++col)
            c.generators[j][col] = bg[j * d_ + col] * alpha.signs[col];
    return c;
}

void ConeFamily::reversed_pass_matrix(int alpha_index, int ordinal, std::span<double> out) const {
    const SignVector& alpha = alphas_.at(alpha_index);
    auto bm = base_matrix(ordinal);
    assert(out.size() == static_cast<std::size_t>(d_) * d_);
    for (int r = 0; r < d_; ++r)
        for (int col = 0; col < d_; ++col)
            out[r * d_ + col] = bm[r * d_ + col] * -alpha.signs[col];
}

std::span<const double> ConeFamily::base_matrix(int ordinal) const {
    return {base_matrices_.data() + static_cast<std::size_t>(ordinal) * d_ * d_,
            static_cast<std::size_t>(d_) * d_};
}

std::span<const double> ConeFamily::base_generators(int ordinal) const {
    return {base_generators_.data() + static_cast<std::size_t>(ordinal) * d_ * d_,
            static_cast<std::size_t>(d_) * d_};
}

ConeFamily build_family(int d, const FamilyOptions& opts) {
    if (d < 1 || d > 16) throw FamilyError("dimension out of range for cone construction");
    double max_angle = opts.max_angle > 0.0 ? opts.max_angle : default_max_generator_angle(d);
    double chord2_t = chord2_of_angle(max_angle);

    ConeFamily fam;
    fam.d_ = d;
    fam.max_angle_ = max_angle;
    fam.subdivision_built_ = true;
    fam.alphas_ = SignVector::all(d);

    std::uint64_t leaves = 0;
    std::vector<double> matrix;
    bool completed = walk_positive_orthant(
        d, chord2_t, axis_generators(d), 0,
        [&](const std::vector<double>& gens, int /*depth*/, double /*c2*/) {
            if (++leaves > opts.max_cones) return false;
            invert_generator_matrix(gens, d, matrix);
            fam.base_matrices_.insert(fam.base_matrices_.end(), matrix.begin(), matrix.end());
            fam.base_generators_.insert(fam.base_generators_.end(), gens.begin(), gens.end());
            return true;
        });
    if (!completed)
        throw FamilyError("cone budget exceeded at d=" + std::to_string(d) +
                          " (use scan_construction for validation, or raise max_cones)");
    fam.k_ = static_cast<int>(leaves);
    return fam;
}

ConeFamily octant_family_2d() {
    const double r = std::sqrt(0.5);
    Cone lower;  // x1 >= x2 >= 0
    lower.alpha = SignVector({+1, +1});
    lower.ordinal = 0;
    lower.generators = {{1.0, 0.0}, {r, r}};
    lower.matrix = {1.0, -1.0, 0.0, std::sqrt(2.0)};
    Cone upper;  // x2 >= x1 >= 0
    upper.alpha = SignVector({+1, +1});
    upper.ordinal = 1;
    upper.generators = {{0.0, 1.0}, {r, r}};
    upper.matrix = {-1.0, 1.0, std::sqrt(2.0), 0.0};
    return ConeFamily(2, {lower, upper});
}

bool contains(const Cone& c, const Point& apex, const Point& x, double eps) {
    require_same_dim(apex, x);
    const int d = apex.dim();
    for (int r = 0; r < d; ++r) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += c.matrix[r * d + k] * (x.coords[k] - apex.coords[k]);
        if (s < -eps) return false;
    }
    return true;
}

bool contains(const Cone& c, const Point& apex, const Point& x) {
    double scale = 1.0;
    for (int k = 0; k < apex.dim(); ++k)
        scale = std::max(scale, std::abs(x.coords[k] - apex.coords[k]));
    return contains(c, apex, x, 1e-9 * scale);
}

ProximityReport validate_proximity(const Cone& c, std::uint64_t trials, std::uint64_t rng_seed) {
    const int d = c.dim();
    SplitMix64 rng(rng_seed);
    ProximityReport rep;
    rep.trials = trials;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    std::vector<double> p(d), q(d);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::fill(p.begin(), p.end(), 0.0);
        std::fill(q.begin(), q.end(), 0.0);
        for (int j = 0; j < d; ++j) {
            double a = rng.next_double(), b = rng.next_double();
            for (int k = 0; k < d; ++k) {
                p[k] += a * c.generators[j][k];
                q[k] += b * c.generators[j][k];
            }
        }
        double np = 0.0, nq = 0.0, npq = 0.0;
        for (int k = 0; k < d; ++k) {
            np += std::abs(p[k]);
            nq += std::abs(q[k]);
            npq += std::abs(p[k] - q[k]);
        }
        rep.worst_margin = std::min(rep.worst_margin, std::max(np, nq) - npq);
    }
    rep.pass = rep.worst_margin >= -1e-9;
    return rep;
}

bool locate_direction(int d, std::span<const double> direction, double max_angle,
                      std::vector<double>& leaf_generators, std::vector<double>& coefficients) {
    if (max_angle <= 0.0) max_angle = default_max_generator_angle(d);
    double chord2_t = chord2_of_angle(max_angle);
    coefficients.assign(direction.begin(), direction.end());
    for (double c : coefficients)
        if (c < 0.0) return false;
    leaf_generators = axis_generators(d);
    if (d == 1) return true;
    std::vector<double> mid(d);
    for (int guard = 0; guard < 4096; ++guard) {
        int bi, bj;
        double max_c2;
        widest_pair(leaf_generators, d, bi, bj, max_c2);
        if (max_c2 < chord2_t) return true;
        double dot = (2.0 - pair_chord2(leaf_generators, d, bi, bj)) / 2.0;
        double nu = std::sqrt(2.0 + 2.0 * dot);
        mid_direction(leaf_generators, d, bi, bj, mid.data());
        double ci = coefficients[bi], cj = coefficients[bj];
        if (cj >= ci) {
            // child replacing generator bi with the mid-direction
            coefficients[bi] = ci * nu;
            coefficients[bj] = cj - ci;
            std::copy(mid.begin(), mid.end(), leaf_generators.begin() + bi * d);
        } else {
            coefficients[bj] = cj * nu;
            coefficients[bi] = ci - cj;
            std::copy(mid.begin(), mid.end(), leaf_generators.begin() + bj * d);
        }
    }
    return false;  // unreachable for sane thresholds
}

CoverageReport validate_coverage(const ConeFamily& f, std::uint64_t trials,
                                 std::uint64_t rng_seed) {
    const int d = f.dim();
    SplitMix64 rng(rng_seed);
    CoverageReport rep;
    rep.trials = trials;
    std::vector<double> v(d), w(d), leaf_gens, coeffs;
    const bool descent = f.subdivision_built() && f.cones_per_orthant() > 4096;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double biggest = 0.0;
        for (int k = 0; k < d; ++k) {
            v[k] = 2.0 * rng.next_double() - 1.0;
            biggest = std::max(biggest, std::abs(v[k]));
        }
        if (biggest < 1e-6) {
            --t;  // degenerate draw, resample
            continue;
        }
        // Reduce to the positive orthant: cone (alpha, i) contains v exactly
        // when base cone i contains the componentwise sign flip of v.
        for (int k = 0; k < d; ++k) w[k] = v[k] < 0.0 ? -v[k] : v[k];
        double eps = 1e-9 * biggest;
        bool covered = false;
        if (descent) {
            if (locate_direction(d, w, f.max_angle(), leaf_gens, coeffs)) {
                covered = true;
                for (double c : coeffs)
                    if (c < -eps) covered = false;
            }
        } else {
            for (int i = 0; i < f.cones_per_orthant() && !covered; ++i) {
                auto m = f.base_matrix(i);
                bool inside = true;
                for (int r = 0; r < d && inside; ++r) {
                    double s = 0.0;
                    for (int k = 0; k < d; ++k) s += m[r * d + k] * w[k];
                    if (s < -eps) inside = false;
                }
                covered = inside;
            }
        }
        if (!covered) {
            rep.uncovered = v;
            rep.pass = false;
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

ConstructionScan scan_construction(int d, double max_angle, int threads) {
    if (max_angle <= 0.0) max_angle = default_max_generator_angle(d);
    double chord2_t = chord2_of_angle(max_angle);

    // Expand a frontier breadth-first, then let each worker stream its share
    // of subtrees depth-first. Counts and maxima are order-independent.
    std::vector<WalkNode> frontier;
    frontier.push_back({axis_generators(d), 0});
    std::vector<double> mid(d);
    const std::size_t want = threads > 1 ? static_cast<std::size_t>(threads) * 16 : 1;
    std::vector<WalkNode> leaves_in_frontier;
    while (frontier.size() < want) {
        // Pop the shallowest node to keep subtree sizes comparable.
        std::size_t pick = 0;
        for (std::size_t i = 1; i < frontier.size(); ++i)
            if (frontier[i].depth < frontier[pick].depth) pick = i;
        WalkNode node = std::move(frontier[pick]);
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        int bi, bj;
        double max_c2 = 0.0;
        if (d > 1) widest_pair(node.gens, d, bi, bj, max_c2);
        if (d == 1 || max_c2 < chord2_t) {
            leaves_in_frontier.push_back(std::move(node));
            if (frontier.empty()) break;
            continue;
        }
        mid_direction(node.gens, d, bi, bj, mid.data());
        WalkNode right{node.gens, node.depth + 1};
        std::copy(mid.begin(), mid.end(), right.gens.begin() + bj * d);
        WalkNode left{std::move(node.gens), node.depth + 1};
        std::copy(mid.begin(), mid.end(), left.gens.begin() + bi * d);
        frontier.push_back(std::move(left));
        frontier.push_back(std::move(right));
    }
    frontier.insert(frontier.end(), std::make_move_iterator(leaves_in_frontier.begin()),
                    std::make_move_iterator(leaves_in_frontier.end()));

    const int nworkers = std::max(1, std::min<int>(threads, static_cast<int>(frontier.size())));
    std::vector<ConstructionScan> parts(nworkers);
    auto run = [&](int w) {
        ConstructionScan& part = parts[w];
        part.max_inverse_dev = 0.0;
        part.max_pair_angle = 0.0;
        std::vector<double> matrix;
        for (std::size_t i = w; i < frontier.size(); i += static_cast<std::size_t>(nworkers)) {
            walk_positive_orthant(
                d, chord2_t, frontier[i].gens, frontier[i].depth,
                [&](const std::vector<double>& gens, int depth, double max_c2) {
                    ++part.leaves;
                    part.max_depth = std::max(part.max_depth, depth);
                    double angle = d > 1 ? 2.0 * std::asin(std::sqrt(max_c2) / 2.0) : 0.0;
                    part.max_pair_angle = std::max(part.max_pair_angle, angle);
                    invert_generator_matrix(gens, d, matrix);
                    part.max_inverse_dev =
                        std::max(part.max_inverse_dev, max_abs_inverse_deviation(matrix, gens, d));
                    return true;
                });
        }
    };
    if (nworkers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    ConstructionScan total;
    for (const ConstructionScan& p : parts) {
        total.leaves += p.leaves;
        total.max_depth = std::max(total.max_depth, p.max_depth);
        total.max_pair_angle = std::max(total.max_pair_angle, p.max_pair_angle);
        total.max_inverse_dev = std::max(total.max_inverse_dev, p.max_inverse_dev);
    }
    total.angle_ok = total.max_pair_angle < max_angle;
    total.inverse_ok = total.max_inverse_dev <= 1e-9;
    return total;
}

}  // namespace l1mst
