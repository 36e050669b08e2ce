#include "l1mst/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace l1mst {

std::vector<SignVector> SignVector::all(int d) {
    std::vector<SignVector> out;
    out.reserve(std::size_t{1} << d);
    for (unsigned bits = 0; bits < (1u << d); ++bits) out.push_back(from_bits(d, bits));
    return out;
}

SignVector SignVector::from_bits(int d, unsigned bits) {
    std::vector<int> s(d, +1);
    for (int j = 0; j < d; ++j)
        if (bits & (1u << j)) s[j] = -1;
    return SignVector(std::move(s));
}

SignVector SignVector::negated() const {
    std::vector<int> s(signs.size());
    for (std::size_t j = 0; j < signs.size(); ++j) s[j] = -signs[j];
    return SignVector(std::move(s));
}

bool operator<(const SweepKey& a, const SweepKey& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.tiebreak != b.tiebreak)
        return std::lexicographical_compare(a.tiebreak.begin(), a.tiebreak.end(),
                                            b.tiebreak.begin(), b.tiebreak.end());
    return a.index < b.index;
}

double l1_distance(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double sum = 0.0;
    for (int i = 0; i < a.dim(); ++i) sum += std::abs(a.coords[i] - b.coords[i]);
    return sum;
}

double sweep_key_value(const Point& p, const SignVector& alpha) {
    if (p.dim() != alpha.dim())
        throw std::invalid_argument("dimension mismatch between point and sign vector");
    double v = 0.0;
    for (int i = 0; i < p.dim(); ++i) v += alpha.signs[i] * p.coords[i];
    return v;
}

SweepKey sweep_key(const Point& p, const SignVector& alpha) {
    return SweepKey{sweep_key_value(p, alpha), p.coords, p.index};
}

bool in_orthant(const Point& s, const SignVector& alpha, const Point& x, double eps) {
    require_same_dim(s, x);
    for (int i = 0; i < s.dim(); ++i)
        if (alpha.signs[i] * (x.coords[i] - s.coords[i]) < -eps) return false;
    return true;
}

bool distance_key_identity_check(const Point& s, const Point& x, const SignVector& alpha,
                                 double tol) {
    if (tol < 0.0) {
        double scale = 1.0;
        for (double c : s.coords) scale = std::max(scale, std::abs(c));
        for (double c : x.coords) scale = std::max(scale, std::abs(c));
        tol = 1e-9 * scale;
    }
    double dist = l1_distance(s, x);
    double gap = sweep_key_value(s, alpha) - sweep_key_value(x, alpha);
    return std::abs(dist - gap) <= tol;
}

bool refined_sweep_less(double key_a, const std::vector<double>& coords_a, int idx_a,
                        double key_b, const std::vector<double>& coords_b, int idx_b) {
    if (key_a != key_b) return key_a < key_b;
    if (coords_a != coords_b)
        return std::lexicographical_compare(coords_a.begin(), coords_a.end(),
                                            coords_b.begin(), coords_b.end());
    return idx_a < idx_b;
}

}  // namespace l1mst
