#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "twoattr/intpoly.hpp"
#include "twoattr/mat.hpp"

namespace twoattr {

inline constexpr std::size_t kDefaultPointBudget = std::size_t{1} << 24;

// Dilation matrix M with digit set D; attractor G = { sum_k M^{-k} a_k : a_k in D }.
struct DigitSystem {
    IntMatrix M;
    std::vector<IntVector> D;

    std::size_t dim() const { return M.rows(); }
    std::size_t digit_count() const { return D.size(); }

    // Checks expansion and residue classes of the digits.
    static DigitSystem make(IntMatrix M, std::vector<IntVector> D);
    // companion(p) with digits {0, e1}
    static DigitSystem standard(const IntPolynomial& p);
    // matrix "0,2;1,0", digits "0,0;1,0"
    static DigitSystem parse(std::string_view matrix, std::string_view digits);
};

// Depth-k truncation; point i is numerators[i] / denominator, denominator = |det M|^k.
struct PointCloud {
    int depth = 0;
    std::int64_t denominator = 1;
    std::vector<IntVector> numerators;  // sorted, unique

    std::vector<RationalVector> points() const;
    std::string to_text() const;
};

// Visits every depth-k digit string. Work is split by digit prefix over `workers`
// threads; fn receives the worker index, the numerator over |det M|^k and the
// index of the first digit a_1.
void for_each_point(const DigitSystem& sys, int depth, unsigned workers,
                    const std::function<void(unsigned, const IntVector&, std::size_t)>& fn,
                    std::size_t budget = kDefaultPointBudget);

PointCloud point_cloud(const DigitSystem& sys, int depth, std::size_t budget = kDefaultPointBudget,
                       unsigned workers = 1);

// Numerator sum over the all-a string at depth k; the depth-k cloud of {0, a} is
// symmetric under N -> full_sum - N.
IntVector full_digit_sum(const DigitSystem& sys, int depth);

RationalVector symmetry_center(const DigitSystem& sys);

// Upper bound on sup |x| over the attractor.
double bounding_radius(const DigitSystem& sys);
// sum_{k>=1} ||M^{-k}|| (spectral norm) with a rigorous tail.
double inverse_power_norm_sum(const IntMatrix& M);

IntMatrix block_dilation(const IntPolynomial& q, int k);

struct AttractorClass {
    enum class Kind { Parallelepiped, DragonProduct, BearProduct, Anisotropic };
    Kind kind = Kind::Anisotropic;
    int k = 0;  // number of factors for product classes
    std::string name() const;
    bool operator==(const AttractorClass& o) const { return kind == o.kind && k == o.k; }
};

AttractorClass classify_isotropic(const IntPolynomial& p);

struct SimilarityCheck {
    bool equal = false;
    RationalMatrix C;
};

// Digit sets {0, q, ..., (m-1)q}; verifies C * cloud(q1) == cloud(q2) exactly.
SimilarityCheck progression_similarity_check(const IntMatrix& M, const IntVector& q1, const IntVector& q2,
                                             int depth);

}  // namespace twoattr
