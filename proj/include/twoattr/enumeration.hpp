#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twoattr/attract.hpp"
#include "twoattr/intpoly.hpp"

namespace twoattr {

struct ClassInfo {
    IntPolynomial key;
    bool self_opposite = false;
    // Filled by annotate().
    std::optional<AttractorClass> isotropic;
    std::optional<bool> tile;
    std::optional<double> alpha;
};

struct Catalog {
    int degree = 0;
    std::vector<IntPolynomial> polys;  // sorted
    std::vector<ClassInfo> classes;    // sorted by key

    std::size_t n_polys() const { return polys.size(); }
    std::size_t n_classes() const { return classes.size(); }
    std::size_t n_self_opposite() const;
    // Opposite classes with z^2+2 and z^2-2 merged at d = 2 (both give the unit square).
    std::size_t n_geometric_classes() const;
    std::string to_json() const;
};

// Largest degree accepted without `deep`.
inline constexpr int kMaxRoutineDegree = 6;
inline constexpr int kMaxDegree = 8;

// Coefficient box: |a_{d-1}| <= d and |a_{d-j}| <= C(d,j) + C(d-1,j-1).
std::vector<std::int64_t> coefficient_bounds(int d);
// |a_{d-j}| <= 2 C(d,j), from root moduli below 2.
std::vector<std::int64_t> baseline_bounds(int d);

Catalog enumerate_expanding(int d, unsigned workers = 1, bool deep = false);
// Unpruned sweep of the baseline box; for soundness checks at small d.
std::vector<IntPolynomial> enumerate_baseline(int d);

std::size_t count_classes(const Catalog& c);
// Self-opposite members of `c` are exactly q(z^2) for q in `half` (degree d/2).
bool self_opposite_identity(const Catalog& c, const Catalog& half);

// Fills the isotropic class, tile verdict and Holder exponent of every class.
void annotate(Catalog& c);

// log2 of 2^{d(1 + 16 ln ln d / ln d)}
double theoretical_upper_bound_log2(int d);
double theoretical_upper_bound(int d);

}  // namespace twoattr
