#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "twoattr/attract.hpp"
#include "twoattr/mat.hpp"

namespace twoattr {

// Truncated hull of G(M, {0, a}): sum of the segments [0, M^{-k} a], k = 1..depth.
struct Zonotope {
    std::size_t dim = 0;
    int depth = 0;
    std::vector<RationalVector> generators;
    RationalVector center;   // half the generator sum; the symmetric form is center + sum [-g/2, g/2]
    double tail_bound = 0;   // >= sum_{k > depth} |M^{-k} a|
};

Zonotope hull_zonotope(const DigitSystem& sys, int depth);

// Primitive integer direction, first nonzero entry positive.
std::vector<BigInt> direction_of(const RationalVector& v);
std::vector<std::vector<BigInt>> distinct_directions(const std::vector<RationalVector>& vs);

// Counter-clockwise vertices of a planar zonotope; parallel generators are merged.
std::vector<RationalVector> hull_vertices_2d(const Zonotope& z);
// Vertex count of the zonotope spanned by the given directions in R^dim (regions of
// the central hyperplane arrangement, by deletion and restriction).
std::uint64_t zonotope_vertex_count(const std::vector<RationalVector>& directions, std::size_t dim);
// Point-in-polygon test for a convex counter-clockwise polygon, boundary included.
bool polygon_contains(const std::vector<RationalVector>& polygon, const RationalVector& x);

struct PolytopeReport {
    bool polytope = false;
    AttractorClass cls;
    std::uint64_t predicted_vertices = 0;   // 2^d or 2^{3d/2}; 0 when not a polytope
    std::size_t directions = 0;             // distinct generator directions at depth 16d
    std::uint64_t counted_vertices = 0;     // from the arrangement, polytopes only
    std::string to_json() const;
};

// Classification route checked against stabilization of generator directions;
// disagreement raises InternalError.
PolytopeReport is_polytope_hull(const IntPolynomial& p);

struct Segment {
    RationalVector v;
    std::size_t multiplicity = 1;
};
using SegmentMultiset = std::vector<Segment>;

// "vx,vy[,vz] @ multiplicity" per line; "@ m" optional, '#' starts a comment.
SegmentMultiset parse_segments(std::string_view text);
// Segments M^{-k} a for k = 1..count.
SegmentMultiset dilation_segments(const IntMatrix& M, const IntVector& a, int count);

struct RecoveryResult {
    enum class Status { Recovered, Ambiguous, Unresolved };
    Status status = Status::Unresolved;
    std::vector<IntMatrix> candidates;  // one representative per pair {M, -M}
    bool fallback = false;              // found by the tuple search instead of length order
    std::string note;
    std::string to_json() const;
};

inline constexpr std::size_t kMaxTieOrderings = 720;

// Integer expanding M (up to sign) with M v = +-w mapping every segment but one
// onto the multiset. Fewer than d + 2 segments raises ValidationError.
RecoveryResult recover_dilation(const SegmentMultiset& segments, std::size_t dim);

}  // namespace twoattr
