#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "twoattr/attract.hpp"

namespace twoattr {

// Lattice translates s with G and G+s touching, with transition counts.
struct ContactGraph {
    std::vector<IntVector> gamma;  // lexicographic order
    std::size_t zero_index = 0;
    IntMatrix A;                   // A(s,s') = #{(a,b) : s' = Ms + a - b}
    std::vector<IntMatrix> T;      // T[a](s,s') = #{b : s' = Ms + a - b}

    std::size_t size() const { return gamma.size(); }
    std::string to_json() const;
};

inline constexpr std::size_t kDefaultCandidateBudget = 20'000'000;

// Per-coordinate bound h with (G - G) inside the box |x_i| <= h_i.
std::vector<double> difference_extent(const DigitSystem& sys);

ContactGraph contact_set(const DigitSystem& sys, std::size_t candidate_budget = kDefaultCandidateBudget);

// Change of basis onto L = Z[M](D - d_0), the smallest M-invariant lattice holding
// the digit differences: G(M, D) is an affine image of G(P^{-1} M P, P^{-1}(D - d_0)),
// scaled in volume by index = |det P|.
struct LatticeReduction {
    bool full_rank = false;
    IntMatrix P;          // columns: basis of L
    std::int64_t index = 0;
    DigitSystem reduced;  // valid when full_rank
};

LatticeReduction reduce_to_primitive(const DigitSystem& sys);

struct MeasureResult {
    std::int64_t measure = 0;
    double value = 0;      // sum(w) / w_0 before rounding
    double residual = 0;   // eigen-residual of the floating path, 0 when exact
    bool exact = false;    // rational kernel used
};

MeasureResult measure(const ContactGraph& g, std::size_t digit_count);
// Lebesgue measure via the primitive reduction; 0 when the digits span a proper subspace.
MeasureResult measure(const DigitSystem& sys);

struct TileVerdict {
    bool tile = false;
    std::int64_t measure = 0;
    double rho_without_zero = 0;
    std::size_t gamma_size = 0;      // contact set of the primitive reduction
    std::int64_t lattice_index = 1;  // |Z^d : Z[M](D - D)|
};

// Both criteria always run; disagreement raises InternalError.
TileVerdict tile_check(const DigitSystem& sys);
bool is_tile(const DigitSystem& sys);

// Depth-k digit sums pairwise distinct modulo M^k Z^d (necessary for a tile).
bool residue_test(const DigitSystem& sys, int k, std::size_t budget = kDefaultPointBudget);

}  // namespace twoattr
