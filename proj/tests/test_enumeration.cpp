#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "twoattr/enumeration.hpp"
#include "twoattr/series.hpp"

using namespace twoattr;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

}  // namespace

TEST_CASE("degree 1 and 2")
{
    const Catalog c1 = enumerate_expanding(1);
    CHECK(c1.polys == std::vector<IntPolynomial>{P("-2,1"), P("2,1")});
    CHECK(c1.n_classes() == 1);

    const Catalog c2 = enumerate_expanding(2);
    std::set<IntPolynomial> want{P("2,0,1"), P("-2,0,1"), P("2,2,1"), P("2,-2,1"), P("2,1,1"), P("2,-1,1")};
    CHECK(std::set<IntPolynomial>(c2.polys.begin(), c2.polys.end()) == want);
    CHECK(c2.n_classes() == 4);
    CHECK(c2.n_geometric_classes() == 3);
    // the quadratic formula: roots of z^2 + bz + c exceed 1 in modulus
    for (int b = -4; b <= 4; ++b)
        for (int c : {-2, 2}) {
            const double disc = b * b - 4.0 * c;
            double mn;
            if (disc >= 0) mn = std::min(std::abs((-b + std::sqrt(disc)) / 2), std::abs((-b - std::sqrt(disc)) / 2));
            else mn = std::sqrt(double(c));
            CHECK((mn > 1) == (want.count(IntPolynomial({c, b, 1})) == 1));
        }
}

TEST_CASE("counts for d = 3, 4, 5")
{
    const Catalog c3 = enumerate_expanding(3);
    CHECK(c3.n_polys() == 14);
    CHECK(c3.n_classes() == 7);
    const Catalog c4 = enumerate_expanding(4);
    CHECK(c4.n_polys() == 36);
    CHECK(c4.n_classes() == 21);
    CHECK(c4.n_classes() == (c4.n_polys() - c4.n_self_opposite()) / 2 + c4.n_self_opposite());
    const Catalog c5 = enumerate_expanding(5);
    CHECK(c5.n_polys() == 58);
    CHECK(c5.n_classes() == 29);
    CHECK(count_classes(c5) == 29);
}

TEST_CASE("pruned enumeration equals the baseline sweep for d <= 4")
{
    for (int d = 1; d <= 4; ++d) CHECK(enumerate_expanding(d).polys == enumerate_baseline(d));
}

TEST_CASE("worker count does not change the catalog")
{
    CHECK(enumerate_expanding(5, 1).polys == enumerate_expanding(5, 4).polys);
}

TEST_CASE("coefficient bounds contain the baseline catalog")
{
    for (int d = 1; d <= 5; ++d) {
        const auto b = coefficient_bounds(d);
        const auto base = baseline_bounds(d);
        REQUIRE(b.size() == base.size());
        for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] <= base[i]);
        for (const auto& p : enumerate_expanding(d).polys)
            for (int k = 0; k < d; ++k) CHECK(std::abs(p[k]) <= b[std::size_t(k)]);
    }
}

TEST_CASE("catalog properties")
{
    for (int d = 1; d <= 5; ++d) {
        const Catalog c = enumerate_expanding(d);
        const std::set<IntPolynomial> all(c.polys.begin(), c.polys.end());
        for (const auto& p : c.polys) {
            CHECK(all.count(opposite(p)) == 1);
            CHECK(is_admissible(p));
            const auto mm = mahler_measure(p);
            CHECK(std::abs(mm.value - 2) < 1e-9);
        }
        if (d % 2 == 0) CHECK(self_opposite_identity(c, enumerate_expanding(d / 2)));
    }
}

TEST_CASE("series members of degree <= 5 are in the catalog")
{
    std::vector<std::set<IntPolynomial>> cat(6);
    for (int d = 1; d <= 5; ++d) {
        const auto c = enumerate_expanding(d);
        cat[std::size_t(d)] = {c.polys.begin(), c.polys.end()};
    }
    for (const auto& s : series_grid(12)) {
        const IntPolynomial p = generate(s);
        if (p.degree() > 5) continue;
        INFO(s.str());
        CHECK(cat[std::size_t(p.degree())].count(p) == 1);
    }
}

TEST_CASE("degree limits")
{
    CHECK_THROWS_AS(enumerate_expanding(7), BudgetError);
    CHECK_THROWS_AS(enumerate_expanding(9, 1, true), BudgetError);
    CHECK_THROWS_AS(enumerate_expanding(0), ValidationError);
}

TEST_CASE("annotate")
{
    Catalog c = enumerate_expanding(3);
    annotate(c);
    for (const auto& k : c.classes) {
        REQUIRE(k.tile);
        CHECK(*k.tile);
        REQUIRE(k.alpha);
        CHECK((*k.alpha > 0 && *k.alpha <= 0.5 + 1e-9));
        REQUIRE(k.isotropic);
    }
    CHECK(c.to_json().find("\"classes\"") != std::string::npos);
}

TEST_CASE("only parallelepipeds have exponent 1/2 for d <= 3")
{
    for (int d = 1; d <= 3; ++d) {
        Catalog c = enumerate_expanding(d);
        annotate(c);
        for (const auto& k : c.classes) {
            INFO(k.key.str());
            const bool half = std::abs(*k.alpha - 0.5) < 1e-6;
            CHECK(half == (k.isotropic->kind == AttractorClass::Kind::Parallelepiped));
        }
    }
}

TEST_CASE("theoretical upper bound")
{
    CHECK(theoretical_upper_bound_log2(8) == doctest::Approx(8 * (1 + 16 * std::log(std::log(8.0)) / std::log(8.0))));
    CHECK(theoretical_upper_bound_log2(8) == doctest::Approx(53.06).epsilon(1e-3));
    for (int d = 3; d < 40; ++d) CHECK(theoretical_upper_bound_log2(d + 1) > theoretical_upper_bound_log2(d));
    CHECK(71 <= theoretical_upper_bound(6));
    CHECK_THROWS_AS(theoretical_upper_bound(2), ValidationError);
}
