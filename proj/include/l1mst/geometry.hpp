// Points in R^d, the l_1 metric, orthant sign vectors, and sweep keys.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace l1mst {

struct Point {
    std::vector<double> coords;
    int index = -1;  // position of the point within its instance

    Point() = default;
    Point(std::vector<double> c, int idx) : coords(std::move(c)), index(idx) {}

    int dim() const { return static_cast<int>(coords.size()); }
};

// An orthant tag: one of the 2^d vectors with entries +1 / -1.
struct SignVector {
    std::vector<int> signs;

    SignVector() = default;
    explicit SignVector(std::vector<int> s) : signs(std::move(s)) {}

    int dim() const { return static_cast<int>(signs.size()); }

    // Enumerates all 2^d sign vectors; index i flips coordinate j iff bit j of i is set.
    static std::vector<SignVector> all(int d);

    // Builds the sign vector for a given bitmask (bit j set -> sign -1 at j).
    static SignVector from_bits(int d, unsigned bits);

    SignVector negated() const;

    bool operator==(const SignVector& o) const { return signs == o.signs; }
};

// Sweep position of a point: the linear functional sum_i alpha_i * x_i,
// refined into a total order by the coordinates and then the point index.
struct SweepKey {
    double value = 0.0;
    std::vector<double> tiebreak;
    int index = -1;
};

bool operator<(const SweepKey& a, const SweepKey& b);
inline bool operator==(const SweepKey& a, const SweepKey& b) {
    return !(a < b) && !(b < a);
}

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("dimension mismatch between points");
}

double l1_distance(const Point& a, const Point& b);

double sweep_key_value(const Point& p, const SignVector& alpha);

SweepKey sweep_key(const Point& p, const SignVector& alpha);

// Whether x lies in the closed orthant of sign vector alpha anchored at s.
bool in_orthant(const Point& s, const SignVector& alpha, const Point& x, double eps = 0.0);

// For x in the closed orthant Ort_{-alpha}(s), the distance to s equals the
// sweep key gap key_alpha(s) - key_alpha(x). Checks that equality within tol
// (defaults to 1e-9 times the coordinate scale).
bool distance_key_identity_check(const Point& s, const Point& x, const SignVector& alpha,
                                 double tol = -1.0);

// Refined sweep comparison on raw data: (key value, coords lex, index).
// Used by the sweep where materializing SweepKey objects would be wasteful.
bool refined_sweep_less(double key_a, const std::vector<double>& coords_a, int idx_a,
                        double key_b, const std::vector<double>& coords_b, int idx_b);

}  // namespace l1mst
