// Acceptance run: one PASS/FAIL line per criterion, sub-checks indented above it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "twoattr/enumeration.hpp"
#include "twoattr/geomzono.hpp"
#include "twoattr/regularity.hpp"
#include "twoattr/render.hpp"
#include "twoattr/series.hpp"

using namespace twoattr;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

class Criterion {
public:
    Criterion(int n, std::string name) : n_(n), name_(std::move(name)), t0_(std::chrono::steady_clock::now()) {}

    bool check(bool ok, const std::string& what)
    {
        std::cout << (ok ? "    ok   " : "    FAIL ") << what << "\n";
        ok_ = ok_ && ok;
        return ok;
    }
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }
    bool finish()
    {
        std::cout << (ok_ ? "PASS" : "FAIL") << " criterion " << n_ << ": " << name_ << " (" << fmt(seconds(), 1)
                  << " s)\n"
                  << std::flush;
        return ok_;
    }
    static std::string fmt(double v, int digits = 6)
    {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(digits);
        s << v;
        return s.str();
    }

private:
    int n_;
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
    bool ok_ = true;
};

template <class F>
bool guarded(Criterion& c, const std::string& what, F&& f)
{
    try {
        return f();
    } catch (const std::exception& e) {
        return c.check(false, what + " raised: " + e.what());
    }
}

std::map<int, Catalog> g_catalogs;

bool criterion_enumeration()
{
    Criterion c(1, "enumeration counts for d = 2..6");
    const std::size_t polys[] = {0, 2, 6, 14, 36, 58, 128};
    const std::size_t classes[] = {0, 1, 4, 7, 21, 29, 71};
    for (int d = 2; d <= 6; ++d) {
        guarded(c, "d=" + std::to_string(d), [&] {
            g_catalogs[d] = enumerate_expanding(d, 1);
            const Catalog& k = g_catalogs[d];
            c.check(k.n_polys() == polys[d], "d=" + std::to_string(d) + " polynomials " + std::to_string(k.n_polys()) +
                                                 " (want " + std::to_string(polys[d]) + ")");
            if (d >= 3)
                c.check(k.n_classes() == classes[d], "d=" + std::to_string(d) + " classes " +
                                                         std::to_string(k.n_classes()) + " (want " +
                                                         std::to_string(classes[d]) + ")");
            else {
                c.check(k.n_classes() == 4, "d=2 opposite-classes " + std::to_string(k.n_classes()) + " (want 4)");
                c.check(k.n_geometric_classes() == 3,
                        "d=2 geometric classes " + std::to_string(k.n_geometric_classes()) + " (want 3)");
            }
            return true;
        });
    }
    c.check(c.seconds() <= 15 * 60, "runtime " + Criterion::fmt(c.seconds(), 1) + " s <= 900 s");
    return c.finish();
}

bool criterion_regularity()
{
    Criterion c(2, "L2 spectral radii and Holder exponents");
    struct Row {
        const char* poly;
        double rho2, alpha;
    };
    const Row rows[] = {
        {"2,2,2,1", 0.97082, 0.06822},  {"2,1,1,1", 0.93238, 0.23148},   {"2,0,0,1", 0.8909, 0.5},
        {"2,-1,-1,1", 0.94278, 0.23282}, {"2,-1,0,1", 0.95197, 0.1173}, {"2,-2,0,1", 0.98548, 0.02563},
        {"2,0,1,1", 0.97542, 0.04713},
    };
    for (const auto& r : rows) {
        guarded(c, r.poly, [&] {
            const RegularityReport rep = holder_exponent(P(r.poly));
            const std::string name = P(r.poly).pretty();
            c.check(std::abs(rep.rho2 - r.rho2) <= 1e-3,
                    name + " rho2 " + Criterion::fmt(rep.rho2) + " vs " + Criterion::fmt(r.rho2, 5) + " (tol 1e-3)");
            return c.check(std::abs(rep.alpha - r.alpha) <= 1e-3, name + " alpha " + Criterion::fmt(rep.alpha) +
                                                                       " vs " + Criterion::fmt(r.alpha, 5) +
                                                                       " (tol 1e-3)");
        });
    }
    for (auto [poly, want, label] : {std::tuple{"2,-2,1", 0.2382, "dragon"}, std::tuple{"2,1,1", 0.3446, "bear"}}) {
        guarded(c, label, [&] {
            const double a = holder_exponent(P(poly)).alpha;
            return c.check(std::abs(a - want) <= 1e-3, std::string(label) + " alpha " + Criterion::fmt(a) + " vs " +
                                                           Criterion::fmt(want, 4) + " (tol 1e-3)");
        });
    }
    c.check(c.seconds() <= 60, "runtime " + Criterion::fmt(c.seconds(), 1) + " s <= 60 s");
    return c.finish();
}

bool criterion_tiles()
{
    Criterion c(3, "companion systems with digits {0, e1} are tiles");
    for (int d = 2; d <= 4; ++d) {
        std::size_t tiles = 0, total = 0;
        for (const auto& k : g_catalogs[d].classes) {
            ++total;
            guarded(c, k.key.str(), [&] {
                if (is_tile(DigitSystem::standard(k.key))) ++tiles;
                else c.check(false, k.key.pretty() + " is not a tile");
                return true;
            });
        }
        c.check(tiles == total, "d=" + std::to_string(d) + ": " + std::to_string(tiles) + " of " +
                                    std::to_string(total) + " classes are tiles");
    }
    guarded(c, "Potiopa", [&] { return c.check(is_tile(DigitSystem::standard(P("2,0,1,0,1"))), "z^4+z^2+2 is a tile"); });
    guarded(c, "measure 9", [&] {
        const auto m = measure(DigitSystem::parse("0,2;1,0", "0,0;3,0")).measure;
        return c.check(m == 9, "measure of (z^2-2, {0, 3e1}) = " + std::to_string(m) + " (want 9)");
    });
    return c.finish();
}

bool criterion_hulls()
{
    Criterion c(4, "convex hulls");
    auto vertices = [](const char* poly, int K) {
        return hull_vertices_2d(hull_zonotope(DigitSystem::standard(P(poly)), K)).size();
    };
    guarded(c, "dragon", [&] {
        bool stable = true;
        std::string counts;
        for (int K = 16; K <= 32; K += 4) {
            const auto v = vertices("2,2,1", K);
            counts += std::to_string(v) + " ";
            stable = stable && v == 8;
        }
        return c.check(stable, "dragon vertices for K = 16..32 step 4: " + counts + "(want 8)");
    });
    guarded(c, "square", [&] {
        const auto a = vertices("-2,0,1", 16), b = vertices("2,0,1", 16);
        return c.check(a == 4 && b == 4, "square vertices " + std::to_string(a) + ", " + std::to_string(b) + " (want 4)");
    });
    guarded(c, "bear", [&] {
        const auto a = vertices("2,1,1", 8), b = vertices("2,1,1", 12), d = vertices("2,1,1", 16);
        return c.check(a < b && b < d, "bear vertices K=8,12,16: " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                                           std::to_string(d) + " (strictly increasing)");
    });
    std::size_t agree = 0, total = 0;
    for (int d = 1; d <= 4; ++d) {
        const Catalog cat = d <= 1 ? enumerate_expanding(1) : g_catalogs[d];
        for (const auto& k : cat.classes) {
            ++total;
            guarded(c, k.key.str(), [&] {
                const PolytopeReport r = is_polytope_hull(k.key);
                using K = AttractorClass::Kind;
                const bool family = r.cls.kind == K::Parallelepiped || r.cls.kind == K::DragonProduct;
                const bool ok = r.polytope == family && (!r.polytope || r.counted_vertices == r.predicted_vertices);
                if (ok) ++agree;
                else c.check(false, k.key.pretty() + " disagrees");
                return ok;
            });
        }
    }
    c.check(agree == total, "is_polytope_hull agrees with the two polytope families on " + std::to_string(agree) +
                                " of " + std::to_string(total) + " classes with d <= 4");
    return c.finish();
}

bool criterion_series()
{
    Criterion c(5, "series polynomials are expanding");
    guarded(c, "grid", [&] {
        const auto grid = series_grid(12);
        std::size_t failures = 0, missing = 0, small = 0;
        for (const auto& s : grid) {
            const IntPolynomial p = generate(s);
            if (!is_expanding(p)) {
                ++failures;
                c.check(false, s.str() + " = " + p.pretty() + " is not expanding");
            }
            if (p.degree() <= 6) {
                ++small;
                const auto& polys = g_catalogs.count(p.degree()) ? g_catalogs[p.degree()].polys
                                                                 : enumerate_expanding(p.degree()).polys;
                if (!std::binary_search(polys.begin(), polys.end(), p)) {
                    ++missing;
                    c.check(false, s.str() + " = " + p.pretty() + " missing from the catalog");
                }
            }
        }
        c.check(failures == 0, std::to_string(grid.size()) + " grid members, " + std::to_string(failures) + " failures");
        return c.check(missing == 0, std::to_string(small) + " members of degree <= 6, " + std::to_string(missing) +
                                         " missing from the catalog");
    });
    return c.finish();
}

bool criterion_partitions()
{
    Criterion c(6, "three-part partitions");
    guarded(c, "partitions", [&] {
        bool ok = true;
        for (std::int64_t d = 0; d <= 200; ++d) {
            std::int64_t brute = 0;
            for (std::int64_t a = 1; 3 * a <= d; ++a)
                for (std::int64_t b = a; a + 2 * b <= d; ++b) ++brute;
            ok = ok && brute == std::llround(double(d * d) / 12) && count_partitions3(d) == brute;
        }
        c.check(ok, "b(d) = round(d^2/12) = brute force for d <= 200");
        ok = true;
        for (std::int64_t d = 3; d <= 120; ++d) ok = ok && good_partitions_brute(d) == good_partitions_formula(d);
        c.check(ok, "b+(d) brute force = corrected formula for d <= 120");
        ok = true;
        for (std::int64_t d = 3; d <= 120; d += 3) ok = ok && ser4_bounds(d).contains(double(good_partitions_brute(d)));
        c.check(ok, "divisible-by-3 bounds on b+(d) hold for d <= 120");
        const bool v9 = count_partitions3(9) == 7 && !three_part_bounds(9).contains(7);
        c.check(v9, "erratum confirmed: b(9) = 7 exceeds the upper bound " + Criterion::fmt(three_part_bounds(9).hi, 2));
        const bool v11 = count_partitions3(11) == 10 && three_part_omega(11) > 0.5;
        return c.check(v11, "erratum confirmed: b(11) = 10, omega = " + Criterion::fmt(three_part_omega(11), 3) + " > 1/2");
    });
    return c.finish();
}

IntMatrix negated(IntMatrix m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
    return m;
}

bool scalar_power(const IntMatrix& m, int up_to)
{
    IntMatrix p = m;
    for (int j = 1; j <= up_to; ++j) {
        bool scalar = true;
        for (std::size_t r = 0; r < p.rows(); ++r)
            for (std::size_t s = 0; s < p.cols(); ++s) scalar = scalar && p(r, s) == (r == s ? p(0, 0) : 0);
        if (scalar) return true;
        p = multiply(p, m);
    }
    return false;
}

bool e1_cyclic(const IntMatrix& m)
{
    const std::size_t d = m.rows();
    RationalMatrix k(d, d);
    IntVector v(d, 0);
    v[0] = 1;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) k(i, j) = v[i];
        v = multiply(m, v);
    }
    return rank(k) == d;
}

bool criterion_properties()
{
    Criterion c(7, "property suites");
    guarded(c, "central symmetry", [&] {
        bool ok = true;
        std::size_t systems = 0;
        for (int d = 1; d <= 4; ++d)
            for (const auto& k : (d == 1 ? enumerate_expanding(1) : g_catalogs[d]).classes) {
                const DigitSystem sys = DigitSystem::standard(k.key);
                ++systems;
                for (int depth = 1; depth <= 10; ++depth) {
                    const PointCloud pc = point_cloud(sys, depth);
                    const IntVector full = full_digit_sum(sys, depth);
                    for (const auto& n : pc.numerators) {
                        IntVector r(n.size());
                        for (std::size_t i = 0; i < n.size(); ++i) r[i] = full[i] - n[i];
                        ok = ok && std::binary_search(pc.numerators.begin(), pc.numerators.end(), r);
                    }
                }
            }
        return c.check(ok, "depth 1..10 clouds symmetric about c_k for " + std::to_string(systems) + " classes");
    });
    guarded(c, "opposite invariance", [&] {
        bool exp = true, cls = true, alpha = true;
        double worst = 0;
        for (int d = 2; d <= 4; ++d)
            for (const auto& p : g_catalogs[d].polys) {
                const IntPolynomial q = opposite(p);
                exp = exp && is_expanding(q) == is_expanding(p);
                cls = cls && classify_isotropic(p) == classify_isotropic(q);
                if (d <= 3) {
                    const double e = std::abs(holder_exponent(p).alpha - holder_exponent(q).alpha);
                    worst = std::max(worst, e);
                    alpha = alpha && e <= 1e-6;
                }
            }
        c.check(exp, "is_expanding invariant under opposite (d <= 4)");
        c.check(cls, "classification invariant under opposite (d <= 4)");
        return c.check(alpha, "alpha invariant under opposite (d <= 3), worst " + Criterion::fmt(worst, 9) + " (tol 1e-6)");
    });
    guarded(c, "companion", [&] {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<int> coef(-9, 9);
        bool ok = true;
        for (int d = 1; d <= 10; ++d)
            for (int t = 0; t < 50; ++t) {
                std::vector<std::int64_t> v(d + 1);
                for (int i = 0; i < d; ++i) v[i] = coef(rng);
                v[d] = 1;
                const IntPolynomial p(v);
                ok = ok && char_poly(companion(p)) == p;
            }
        return c.check(ok, "char_poly(companion(p)) = p for 500 random monic p, d <= 10");
    });
    guarded(c, "progression similarity", [&] {
        struct Case {
            const char* poly;
            IntVector q2;
        };
        const Case cases[] = {{"2,1,1,1", {1, 1, 0}}, {"2,1,1", {1, 1}}, {"2,-1,0,1", {1, 1, 0}}};
        bool ok = true;
        for (const auto& k : cases) {
            IntVector q1(k.q2.size(), 0);
            q1[0] = 1;
            ok = ok && progression_similarity_check(companion(P(k.poly)), q1, k.q2, 6).equal;
        }
        return c.check(ok, "C * cloud(0, q1) = cloud(0, q2) exactly at depth 6 for three systems");
    });
    guarded(c, "recover", [&] {
        std::mt19937_64 rng(20261017);
        std::uniform_int_distribution<int> entry(-4, 4);
        std::size_t done = 0, ok = 0, skipped = 0;
        for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
            std::size_t here = 0;
            while (here < 25) {
                IntMatrix M(d, d);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) M(i, j) = entry(rng);
                const BigInt det = determinant(M);
                if (det == 0 || abs(det) > 64 || !is_expanding(char_poly(M))) continue;
                if (scalar_power(M, int(2 * d)) || !e1_cyclic(M)) {
                    ++skipped;
                    continue;
                }
                IntVector a(d, 0);
                a[0] = 1;
                const auto r = recover_dilation(dilation_segments(M, a, 12 * int(d)), d);
                if (r.status == RecoveryResult::Status::Recovered && r.candidates.size() == 1 &&
                    (r.candidates[0] == M || r.candidates[0] == negated(M)))
                    ++ok;
                ++here;
                ++done;
            }
        }
        return c.check(ok == done, "recover_dilation roundtrip " + std::to_string(ok) + " of " + std::to_string(done) +
                                       " random 2x2/3x3 matrices (" + std::to_string(skipped) +
                                       " skipped: scalar power or non-cyclic e1)");
    });
    guarded(c, "tile criteria", [&] {
        std::vector<DigitSystem> systems;
        for (int d = 2; d <= 4; ++d)
            for (const auto& k : g_catalogs[d].classes) systems.push_back(DigitSystem::standard(k.key));
        for (auto [m, dg] : {std::pair{"2", "0;3"}, std::pair{"2", "0;5"}, std::pair{"0,2;1,0", "0,0;3,0"},
                             std::pair{"0,-2;1,-2", "0,0;3,0"}, std::pair{"3", "0;4;8"}, std::pair{"3", "0;1;5"}})
            systems.push_back(DigitSystem::parse(m, dg));
        std::size_t ok = 0;
        for (const auto& s : systems) {
            const TileVerdict v = tile_check(s);  // raises on disagreement
            if (v.tile == (v.measure == 1)) ++ok;
        }
        return c.check(ok == systems.size(), "eigen-measure and restricted spectral radius agree on " +
                                                 std::to_string(ok) + " of " + std::to_string(systems.size()) + " systems");
    });
    return c.finish();
}

bool criterion_rendering()
{
    Criterion c(8, "rendering");
    guarded(c, "determinism", [&] {
        struct Job {
            const char* poly;
            int depth;
            RenderMode mode;
        };
        const Job jobs[] = {{"2,2,1", 16, RenderMode::Split}, {"2,1,1", 16, RenderMode::Haar},
                            {"2,1,1,1", 16, RenderMode::Split}, {"-2,0,1", 12, RenderMode::Attractor}};
        bool ok = true;
        for (const auto& j : jobs) {
            RenderJob job;
            job.sys = DigitSystem::standard(P(j.poly));
            job.depth = j.depth;
            job.width = 256;
            job.mode = j.mode;
            const std::string ref = render(job).ppm();
            ok = ok && render(job).ppm() == ref;
            for (unsigned w : {2u, 3u, 8u}) {
                job.workers = w;
                ok = ok && render(job).ppm() == ref;
            }
        }
        return c.check(ok, "byte-identical PPM across runs and worker counts 1, 2, 3, 8");
    });
    const char* cubics[] = {"2,2,2,1", "2,1,1,1", "2,0,0,1", "2,-1,-1,1", "2,-1,0,1", "2,-2,0,1", "2,0,1,1"};
    const std::map<int, int> want = {{3, 10}, {2, 22}, {4, 22}, {5, 45}, {6, 195}, {7, 106}};
    for (auto [type, k] : want) {
        guarded(c, "auto depth", [&] {
            const AutoDepth a = auto_depth(DigitSystem::standard(P(cubics[type - 1])), 1.0 / 32);
            return c.check(a.depth == k, "type " + std::to_string(type) + " auto depth " + std::to_string(a.depth) +
                                             " (want " + std::to_string(k) + ", alpha " + Criterion::fmt(a.alpha) + ")");
        });
    }
    return c.finish();
}

}  // namespace

int main()
{
    int failed = 0;
    failed += !criterion_enumeration();
    failed += !criterion_regularity();
    failed += !criterion_tiles();
    failed += !criterion_hulls();
    failed += !criterion_series();
    failed += !criterion_partitions();
    failed += !criterion_properties();
    failed += !criterion_rendering();
    std::cout << (8 - failed) << " of 8 criteria passed\n";
    return failed == 0 ? 0 : 1;
}
