#include <cmath>
#include <random>

#include "doctest.h"
#include "twoattr/attract.hpp"
#include "twoattr/intpoly.hpp"
#include "twoattr/mat.hpp"

using namespace twoattr;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }
IntMatrix Mx(const char* s) { return parse_matrix(s); }

RationalMatrix R(std::initializer_list<std::initializer_list<Rational>> rows)
{
    RationalMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (const auto& x : r) m(i, j++) = x;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("companion")
{
    CHECK(companion(P("2,0,0,1")) == Mx("0,0,-2;1,0,0;0,1,0"));
    CHECK(companion(P("-2,1")) == Mx("2"));
    CHECK(companion(P("2,2,1")) == Mx("0,-2;1,-2"));
    CHECK_THROWS_AS(companion(P("2,0,2")), ValidationError);
}

TEST_CASE("char_poly")
{
    CHECK(char_poly(companion(P("2,0,0,1"))) == P("2,0,0,1"));
    CHECK(char_poly(IntMatrix::identity(2)) == P("1,-2,1"));
    CHECK(char_poly(block_dilation(P("2,-2,1"), 2)) == P("2,0,-2,0,1"));
}

TEST_CASE("char_poly of companion is the identity, d <= 10")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int d = 1; d <= 10; ++d)
        for (int t = 0; t < 20; ++t) {
            std::vector<std::int64_t> c(d + 1);
            for (int i = 0; i < d; ++i) c[i] = coef(rng);
            c[d] = 1;
            const IntPolynomial p(c);
            CHECK(char_poly(companion(p)) == p);
        }
}

TEST_CASE("determinant and adjugate")
{
    const IntMatrix m = Mx("1,2,0;3,-1,4;0,5,2");
    const BigInt det = determinant(m);
    CHECK(det == -34);
    const IntMatrix prod = multiply(m, adjugate(m));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(prod(i, j) == (i == j ? -34 : 0));
}

TEST_CASE("inverse_rational")
{
    CHECK(inverse_rational(companion(P("-2,0,1"))) == R({{0, 1}, {Rational(1, 2), 0}}));
    CHECK(inverse_rational(IntMatrix::identity(3)) == RationalMatrix::identity(3));
    CHECK(inverse_rational(Mx("2")) == R({{Rational(1, 2)}}));
    const IntMatrix m = companion(P("2,1,1,1"));
    CHECK(multiply(to_rational(m), inverse_rational(m)) == RationalMatrix::identity(3));
    CHECK_THROWS_AS(inverse_rational(Mx("1,2;2,4")), ValidationError);
}

TEST_CASE("spectral_radius")
{
    CHECK(spectral_radius(Mx("2")) == doctest::Approx(2).epsilon(1e-12));
    CHECK(spectral_radius(companion(P("-2,0,1"))) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(spectral_radius(companion(P("2,-2,0,1"))) == doctest::Approx(1.7693).epsilon(1e-4));
}

TEST_CASE("spectral radius matches the largest root modulus")
{
    for (const char* s : {"2,2,2,1", "2,1,1,1", "2,0,0,1", "2,-1,-1,1", "2,-1,0,1", "2,-2,0,1", "2,0,1,1", "2,0,1,0,1"}) {
        const IntPolynomial p = P(s);
        double mx = 0;
        for (const auto& r : certified_roots(p).roots) mx = std::max(mx, std::abs(r.z));
        CHECK(std::abs(spectral_radius(companion(p)) - mx) < 1e-7);
    }
}

TEST_CASE("find_commuting_map")
{
    const IntMatrix M = companion(P("2,1,1,1"));
    const IntVector a{1, 0, 0};
    CHECK(find_commuting_map(M, a, {1, 0, 0}) == RationalMatrix::identity(3));

    const IntVector Ma = multiply(M, a);
    CHECK(find_commuting_map(M, a, RationalVector(Ma.begin(), Ma.end())) == to_rational(M));

    const IntMatrix S = companion(P("-2,0,1"));
    const RationalMatrix C = find_commuting_map(S, {1, 0}, {1, 1});
    CHECK(multiply(C, to_rational(S)) == multiply(to_rational(S), C));
    CHECK(multiply(C, RationalVector{1, 0}) == RationalVector{1, 1});

    // 2I has no cyclic vector
    CHECK_THROWS_AS(find_commuting_map(Mx("2,0;0,2"), {1, 1}, {1, 0}), ValidationError);
}

TEST_CASE("validate_digits")
{
    const IntMatrix M = companion(P("-2,0,1"));
    CHECK(validate_digits(M, {{0, 0}, {1, 0}}));
    CHECK_FALSE(validate_digits(M, {{0, 0}, {2, 0}}));
    CHECK(validate_digits(M, {{0, 0}, {3, 0}}));
    CHECK_THROWS_AS(validate_digits(M, {{0, 0}, {1, 0}, {0, 1}}), ValidationError);
}

TEST_CASE("matrix text format")
{
    CHECK(format_matrix(Mx("0,-2;1,0")) == "0,-2;1,0");
    CHECK_THROWS_AS(Mx("1,2;3"), ValidationError);
}

TEST_CASE("rref, rank and kernel")
{
    const RationalMatrix m = R({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(m) == 2);
    const auto k = kernel(m);
    REQUIRE(k.size() == 1);
    CHECK(multiply(m, k[0]) == RationalVector{0, 0, 0});
    CHECK_FALSE(solve_unique(m, {1, 2, 0}));
    const auto x = solve_unique(R({{2, 1}, {1, 3}}), {3, 4});
    REQUIRE(x);
    CHECK(*x == RationalVector{1, 1});
}
