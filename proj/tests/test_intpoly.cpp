#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "doctest.h"
#include "twoattr/intpoly.hpp"

using namespace twoattr;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

// Roots of a monic polynomial as eigenvalues of a companion matrix built here.
std::vector<std::complex<double>> oracle_roots(const IntPolynomial& p)
{
    const int d = p.degree();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -double(p[i]) / double(p.leading());
    Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
    std::vector<std::complex<double>> r;
    for (int i = 0; i < d; ++i) r.push_back(es.eigenvalues()[i]);
    return r;
}

double bisect(const IntPolynomial& p, double lo, double hi)
{
    auto f = [&](double x) { return evaluate(p, std::complex<double>(x, 0)).real(); };
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(lo) < 0) == (f(mid) < 0)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("evaluate")
{
    CHECK(evaluate(P("2,0,0,1"), BigInt(1)) == 3);
    CHECK(evaluate(P("2,2,1"), BigInt(-1)) == 1);
    const IntPolynomial p = P("2,-2,0,1");
    const double root = bisect(p, -1.8, -1.7);
    CHECK(root == doctest::Approx(-1.7693).epsilon(1e-4));
    CHECK(std::abs(evaluate(p, std::complex<double>(-1.7693, 0))) < 1e-3);
    CHECK(std::abs(evaluate(p, std::complex<double>(root, 0))) < 1e-12);
}

TEST_CASE("parse and format")
{
    const IntPolynomial p = P("2,2,2,1");
    CHECK(p.degree() == 3);
    CHECK(p.str() == "2,2,2,1");
    CHECK(p.pretty() == "z^3+2z^2+2z+2");
    CHECK(P(" -2 , 0, 1 ").str() == "-2,0,1");
    CHECK_THROWS_AS(P("1,x"), ValidationError);
    CHECK_THROWS_AS(P("0"), ValidationError);
}

TEST_CASE("is_expanding")
{
    CHECK(is_expanding(P("2,0,0,1")));
    CHECK_FALSE(is_expanding(P("-2,1,1")));
    CHECK(is_expanding(P("2,2,2,2,1")));
    for (const auto& r : oracle_roots(P("2,2,2,2,1"))) CHECK(std::abs(r) >= 1.06);
    CHECK_FALSE(is_expanding(P("1,0,1")));  // roots +-i on the circle
    CHECK_THROWS_AS(is_expanding(IntPolynomial({5})), ValidationError);
}

TEST_CASE("Schur-Cohn agrees with floating roots for |a_k| <= 6, d <= 5")
{
    std::size_t compared = 0, disagreements = 0;
    for (int d = 1; d <= 5; ++d) {
        std::vector<std::int64_t> c(d + 1, -6);
        c[d] = 1;
        while (true) {
            const IntPolynomial p(c);
            double mn = 1e300;
            for (const auto& r : oracle_roots(p)) mn = std::min(mn, std::abs(r));
            if (std::abs(mn - 1) > 1e-6) {
                ++compared;
                if (is_expanding(p) != (mn > 1)) ++disagreements;
            }
            int i = 0;
            while (i < d && c[i] == 6) c[i++] = -6;
            if (i == d) break;
            ++c[i];
        }
    }
    CHECK(compared > 300000);
    CHECK(disagreements == 0);
}

TEST_CASE("mahler_measure")
{
    for (const char* s : {"2,0,0,1", "-2,1", "-2,1,1"}) {
        const auto m = mahler_measure(P(s));
        CHECK(m.value == doctest::Approx(2).epsilon(1e-12));
        CHECK(m.lo <= 2);
        CHECK(m.hi >= 2);
        CHECK(m.hi - m.lo < 1e-9);
    }
    const auto m = mahler_measure(P("2,1,1,1"));
    CHECK(m.exact);
    CHECK(m.value == 2);
}

TEST_CASE("certified roots")
{
    const IntPolynomial p = P("2,1,1,1");
    const auto cr = certified_roots(p);
    REQUIRE(cr.roots.size() == 3);
    double lo = 1, hi = 1;
    for (const auto& r : cr.roots) {
        lo *= r.modulus_lo();
        hi *= r.modulus_hi();
    }
    CHECK(lo <= 2);
    CHECK(hi >= 2);
    std::vector<double> mods;
    for (const auto& r : cr.roots) mods.push_back(std::abs(r.z));
    std::sort(mods.begin(), mods.end());
    CHECK(mods[0] == doctest::Approx(1.2157).epsilon(1e-4));
    CHECK(mods[2] == doctest::Approx(1.3532).epsilon(1e-4));
}

TEST_CASE("opposite")
{
    CHECK(opposite(P("2,1,1,1")) == P("-2,1,-1,1"));
    CHECK(opposite(P("2,0,1")) == P("2,0,1"));
    CHECK(opposite(P("-2,1")) == P("2,1"));
    // roots are negated
    auto a = oracle_roots(P("2,1,1,1"));
    auto b = oracle_roots(opposite(P("2,1,1,1")));
    for (const auto& r : a) {
        double best = 1e300;
        for (const auto& s : b) best = std::min(best, std::abs(s + r));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("class_key")
{
    CHECK(class_key(P("2,1,1,1")) == class_key(P("-2,1,-1,1")));
    CHECK(class_key(P("2,0,1")) == P("2,0,1"));
    CHECK(class_key(P("2,2,1")) == class_key(P("2,-2,1")));
    CHECK(class_key(P("2,2,1")) != class_key(P("2,1,1")));
}

TEST_CASE("is_isotropic")
{
    CHECK(is_isotropic(P("2,0,0,1")));
    CHECK_FALSE(is_isotropic(P("2,1,1,1")));
    CHECK(is_isotropic(P("2,0,1,0,1")));
    CHECK(is_isotropic(P("2,-2,1")));
    CHECK(is_isotropic(P("-2,0,0,0,0,0,1")));
}

TEST_CASE("isotropic_quadratic_factor")
{
    auto f = isotropic_quadratic_factor(P("2,0,1,0,1"));
    REQUIRE(f);
    CHECK(f->first == P("2,1,1"));
    CHECK(f->second == 2);
    CHECK(substitute_power(f->first, f->second) == P("2,0,1,0,1"));

    f = isotropic_quadratic_factor(P("-2,0,0,0,0,0,1"));
    REQUIRE(f);
    CHECK(f->first == P("-2,0,1"));
    CHECK(f->second == 3);

    CHECK_FALSE(isotropic_quadratic_factor(P("2,0,0,1")));
    CHECK_THROWS_AS(isotropic_quadratic_factor(P("2,0,1,1")), ValidationError);
}

TEST_CASE("arithmetic")
{
    const IntPolynomial a = P("1,1"), b = P("-1,1");
    CHECK(a * b == P("-1,0,1"));
    CHECK(divide_exact(P("-2,1,1"), P("-1,1")) == P("2,1"));
    CHECK_THROWS_AS(divide_exact(P("2,0,1"), P("-1,1")), ValidationError);
    CHECK(substitute_power(P("2,1,1"), 3) == P("2,0,0,1,0,0,1"));
}

TEST_CASE("opposite is an involution and preserves expansion")
{
    for (int a0 : {-2, 2})
        for (int a1 = -3; a1 <= 3; ++a1)
            for (int a2 = -3; a2 <= 3; ++a2) {
                const IntPolynomial p({a0, a1, a2, 1});
                CHECK(opposite(opposite(p)) == p);
                CHECK(is_expanding(p) == is_expanding(opposite(p)));
            }
}
