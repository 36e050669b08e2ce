// Per-orthant simplicial cone coverings of R^d with the proximity property:
// any two points inside one cone are at most as far apart (in l_1) as the
// farther of them is from the apex. Nearest-in-cone edges over such a
// covering form a supergraph of some minimum spanning tree.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "l1mst/geometry.hpp"

namespace l1mst {

// One simplicial cone R_{d,alpha,i}: membership is A * (x - apex) >= 0
// componentwise. The matrix is the inverse of the generator column matrix,
// so A * [generators as columns] = I.
struct Cone {
    SignVector alpha;
    int ordinal = 0;
    std::vector<double> matrix;                   // d*d, row-major inequality rows
    std::vector<std::vector<double>> generators;  // d unit-length directions

    int dim() const { return alpha.dim(); }
};

// Narrowness threshold used while subdividing: cones stop splitting once the
// max pairwise generator angle drops strictly below asin(1 / (2 d^{3/2})).
double default_max_generator_angle(int d);

struct FamilyOptions {
    // Negative means the default threshold for the dimension.
    double max_angle = -1.0;
    // Refuses to build families whose per-orthant cone count would exceed
    // this; counts explode with d (16 at d=2, 1280 at d=3, ~253k at d=4).
    std::uint64_t max_cones = 1'000'000;
};

class FamilyError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// All cones for one dimension, grouped by orthant: k cones per sign vector.
// Only the positive-orthant cones are stored; the cone (alpha, i) is the
// exact per-coordinate sign flip of base cone i, and (-alpha, i) has the
// negated matrix of (alpha, i).
class ConeFamily {
  public:
    ConeFamily() = default;

    // Wraps explicit positive-orthant cones (used by handcrafted families
    // and by tests that mutate a family).
    ConeFamily(int d, std::vector<Cone> positive_orthant_cones);

    int dim() const { return d_; }
    int cones_per_orthant() const { return k_; }
    std::size_t size() const { return alphas_.size() * static_cast<std::size_t>(k_); }
    const std::vector<SignVector>& alphas() const { return alphas_; }

    // Materializes cone (alpha_index, ordinal); alpha_index addresses alphas().
    Cone cone(int alpha_index, int ordinal) const;

    // Writes the d*d membership matrix of cone (-alpha, ordinal) for the given
    // alpha_index. This is the matrix each sweep pass transforms points with.
    void reversed_pass_matrix(int alpha_index, int ordinal, std::span<double> out) const;

    std::span<const double> base_matrix(int ordinal) const;
    std::span<const double> base_generators(int ordinal) const;  // row j = generator j

    // Built by recursive subdivision (enables the fast coverage descent).
    bool subdivision_built() const { return subdivision_built_; }
    double max_angle() const { return max_angle_; }

    friend ConeFamily build_family(int d, const FamilyOptions& opts);

  private:
    int d_ = 0;
    int k_ = 0;
    double max_angle_ = 0.0;
    bool subdivision_built_ = false;
    std::vector<SignVector> alphas_;
    std::vector<double> base_matrices_;    // k * d * d
    std::vector<double> base_generators_;  // k * d * d, row j = generator j
};

// Builds the covering for dimension d by recursive subdivision of the
// positive orthant, starting from the unit axis generators. Each step splits
// the widest generator pair along its normalized mid-direction (for d = 2
// this halves the apex angle, giving k = 16 per quadrant). Throws
// FamilyError when d is out of range or the cone budget is exceeded.
ConeFamily build_family(int d, const FamilyOptions& opts = {});

// The classical 8-cone family of 45-degree half-quadrants for d = 2
// (k = 2 per quadrant); a drop-in alternative to build_family(2).
ConeFamily octant_family_2d();

// Membership test with inclusive tolerance: every row r of the cone matrix
// must satisfy dot(A_r, x - apex) >= -eps. Boundary points deliberately
// belong to all adjacent cones; duplicate candidate edges are harmless,
// a missed point is not.
bool contains(const Cone& c, const Point& apex, const Point& x, double eps);
bool contains(const Cone& c, const Point& apex, const Point& x);  // eps = 1e-9 * max(1, |x-apex|_inf)

struct ProximityReport {
    bool pass = false;
    double worst_margin = 0.0;  // min over trials of max(|p|_1,|q|_1) - |p-q|_1
    std::uint64_t trials = 0;
};

// Samples pairs p, q of random non-negative generator combinations and
// checks |p-q|_1 <= max(|p|_1, |q|_1) with slack 1e-9.
ProximityReport validate_proximity(const Cone& c, std::uint64_t trials, std::uint64_t rng_seed);

struct CoverageReport {
    bool pass = false;
    std::uint64_t trials = 0;
    std::optional<std::vector<double>> uncovered;  // first uncovered direction
};

// Samples random directions and checks each lies in at least one cone of
// the family.
CoverageReport validate_coverage(const ConeFamily& f, std::uint64_t trials,
                                 std::uint64_t rng_seed);

struct ConstructionScan {
    std::uint64_t leaves = 0;        // cones per orthant (k_d)
    int max_depth = 0;
    double max_pair_angle = 0.0;     // radians, worst over all cones
    double max_inverse_dev = 0.0;    // worst |A*E - I| entry
    bool angle_ok = false;
    bool inverse_ok = false;
};

// Streams the subdivision of the positive orthant without materializing it,
// validating every cone (angle criterion, matrix-generator duality). The
// only way to check construction for d >= 5, where counts reach 10^8.
ConstructionScan scan_construction(int d, double max_angle = -1.0, int threads = 1);

// Descends the subdivision to the leaf cone containing the direction;
// returns the leaf's generator rows and the direction's coefficients in
// them (all >= -eps when covered). Returns false only if the direction has
// a negative coordinate.
bool locate_direction(int d, std::span<const double> direction, double max_angle,
                      std::vector<double>& leaf_generators, std::vector<double>& coefficients);

}  // namespace l1mst
