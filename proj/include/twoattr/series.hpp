#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twoattr/intpoly.hpp"

namespace twoattr {

enum class SeriesTag { S1a, S1b, S2a, S2b, S2c, S3a, S3b, S4a, S4b, S5, S6, S7 };

struct SeriesId {
    SeriesTag tag = SeriesTag::S1a;
    std::vector<int> params;  // (m,q) | (m,q,k) | (m,r) | (a,b,k)
    int sign = 1;             // S6 only: 1 + sign z^r + z^{2r}
    std::string str() const;
};

SeriesTag parse_series_tag(std::string_view name);  // "1a" .. "7"
std::string series_name(SeriesTag tag);
std::size_t series_arity(SeriesTag tag);
const std::vector<SeriesTag>& all_series_tags();

// Name of the violated clause, or nothing when the parameters are valid.
std::optional<std::string> series_violation(const SeriesId& id);
// Throws ValidationError naming the clause unless `override_validity` is set.
IntPolynomial generate(const SeriesId& id, bool override_validity = false);
int series_degree(const SeriesId& id);

// Valid parameter sets: S1/S2 with max(m,q) <= 12, S3/S4 with degree <= max_degree,
// S5 with m,q <= 5, S6 with m+2r <= max_degree, S7 with degree <= max_degree.
std::vector<SeriesId> series_grid(int max_degree = 12);

// (1 - z^m)(1 - z^q)(1 + z^k) + 1 vanishes on the unit circle exactly when some z has
// z^m = z^q = e^{-i pi/3} and z^k = e^{2i pi/3} (up to conjugation).
bool series4b_unit_root(int m, int q, int k);

bool is_bad_vector(std::int64_t n1, std::int64_t n2, std::int64_t n3);

// Partitions of d into three natural parts, by brute force.
std::int64_t count_partitions3(std::int64_t d);
// Partitions of n into three nonnegative parts.
std::int64_t count_partitions3_nonneg(std::int64_t n);
std::int64_t good_partitions_brute(std::int64_t d);
// b(d) minus the bad-vector sum, inner counts over nonnegative parts.
std::int64_t good_partitions_formula(std::int64_t d);
// Both routes; disagreement raises InternalError.
std::int64_t count_good_partitions(std::int64_t d);

struct Bounds {
    double lo = 0, hi = 0;
    bool contains(double v) const { return lo <= v && v <= hi; }
};
// d^2/16 - 43d/36 - 5/6 <= b+(d) <= 7d^2/108 + 5d/12 + 2/3 (d divisible by 3).
Bounds ser4_bounds(std::int64_t d);
// (d(d-1) - r(r-1))/12 -+ 1/2, r = d mod 3.
Bounds three_part_bounds(std::int64_t d);
// omega_d = b(d) - d(d-1)/12, claimed to lie in [-2/3, 1/2].
double three_part_omega(std::int64_t d);

}  // namespace twoattr
