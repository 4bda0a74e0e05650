#include "twoattr/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"
#include "twoattr/regularity.hpp"
#include "twoattr/tiling.hpp"

namespace twoattr {

namespace {

std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_degree(int d, bool deep)
{
    if (d < 1) throw ValidationError("degree must be at least 1");
    if (d > kMaxDegree) throw BudgetError("degree " + std::to_string(d) + " exceeds the enumeration limit " +
                                          std::to_string(kMaxDegree));
    if (d > kMaxRoutineDegree && !deep)
        throw BudgetError("degree " + std::to_string(d) + " needs --deep (runs for hours)");
}

// Sweeps a_1..a_{d-2} for fixed a_0 and a_{d-1}. Candidates must satisfy
// a_0 p(1) > 0 and a_0 p(-1) > 0: p has no roots in [-1,1], so p keeps the sign
// of p(0) = a_0 on that interval.
void sweep(int d, std::int64_t a0, std::int64_t top, const std::vector<std::int64_t>& bound,
           std::vector<IntPolynomial>& out)
{
    std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1, 0);
    c[0] = a0;
    c[static_cast<std::size_t>(d)] = 1;
    if (d >= 2) c[static_cast<std::size_t>(d) - 1] = top;
    else if (top != 0) return;
    const int inner = d - 2;  // free positions 1..d-2
    for (int i = 1; i <= inner; ++i) c[static_cast<std::size_t>(i)] = -bound[static_cast<std::size_t>(i)];
    while (true) {
        std::int64_t p1 = 0, pm1 = 0;
        for (int i = 0; i <= d; ++i) {
            p1 += c[static_cast<std::size_t>(i)];
            pm1 += (i % 2 ? -1 : 1) * c[static_cast<std::size_t>(i)];
        }
        if (a0 * p1 > 0 && a0 * pm1 > 0) {
            IntPolynomial p(c);
            if (is_expanding(p)) out.push_back(std::move(p));
        }
        int i = 1;
        for (; i <= inner; ++i) {
            auto& v = c[static_cast<std::size_t>(i)];
            if (v < bound[static_cast<std::size_t>(i)]) {
                ++v;
                break;
            }
            v = -bound[static_cast<std::size_t>(i)];
        }
        if (i > inner) break;
    }
}

}  // namespace

std::vector<std::int64_t> coefficient_bounds(int d)
{
    // Roots have moduli in (1,2) with product 2. In logarithmic coordinates the
    // elementary symmetric function e_j of the moduli is convex, so over the box
    // [0, ln 2]^d cut by the sum ln 2 it peaks at a vertex: one modulus 2, the
    // rest 1, giving C(d-1,j) + 2 C(d-1,j-1) = C(d,j) + C(d-1,j-1). For j = 1 the
    // sum of moduli is strictly below d + 1, hence |a_{d-1}| <= d.
    std::vector<std::int64_t> b(static_cast<std::size_t>(d) + 1, 0);
    b[0] = 2;
    b[static_cast<std::size_t>(d)] = 1;
    for (int j = 1; j < d; ++j) b[static_cast<std::size_t>(d - j)] = binomial(d, j) + binomial(d - 1, j - 1);
    if (d >= 2) b[static_cast<std::size_t>(d) - 1] = d;
    return b;
}

std::vector<std::int64_t> baseline_bounds(int d)
{
    std::vector<std::int64_t> b(static_cast<std::size_t>(d) + 1, 0);
    for (int k = 0; k <= d; ++k) b[static_cast<std::size_t>(k)] = 2 * binomial(d, k);
    return b;
}

std::size_t Catalog::n_self_opposite() const
{
    return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(),
                                                  [](const ClassInfo& c) { return c.self_opposite; }));
}

std::size_t Catalog::n_geometric_classes() const
{
    if (degree != 2) return n_classes();
    const IntPolynomial plus({2, 0, 1}), minus({-2, 0, 1});
    bool has_plus = false, has_minus = false;
    for (const auto& c : classes) {
        has_plus = has_plus || c.key == plus;
        has_minus = has_minus || c.key == minus;
    }
    return n_classes() - (has_plus && has_minus ? 1 : 0);
}

std::string Catalog::to_json() const
{
    nlohmann::json j;
    j["degree"] = degree;
    j["n_polys"] = n_polys();
    j["n_classes"] = n_classes();
    j["n_self_opposite"] = n_self_opposite();
    if (degree == 2) j["n_geometric_classes"] = n_geometric_classes();
    auto& ps = j["polynomials"] = nlohmann::json::array();
    for (const auto& p : polys) ps.push_back(p.str());
    auto& cs = j["classes"] = nlohmann::json::array();
    for (const auto& c : classes) {
        nlohmann::json e;
        e["key"] = c.key.str();
        e["pretty"] = c.key.pretty();
        e["self_opposite"] = c.self_opposite;
        if (c.isotropic) e["isotropic_class"] = c.isotropic->name();
        if (c.tile) e["tile"] = *c.tile;
        if (c.alpha) e["alpha"] = *c.alpha;
        cs.push_back(std::move(e));
    }
    return j.dump(2);
}

Catalog enumerate_expanding(int d, unsigned workers, bool deep)
{
    check_degree(d, deep);
    const auto bound = coefficient_bounds(d);
    struct Task {
        std::int64_t a0, top;
    };
    std::vector<Task> tasks;
    for (std::int64_t a0 : {-2, 2}) {
        const std::int64_t t = d >= 2 ? bound[static_cast<std::size_t>(d) - 1] : 0;
        for (std::int64_t top = -t; top <= t; ++top) tasks.push_back({a0, top});
    }
    std::vector<std::vector<IntPolynomial>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) sweep(d, tasks[i].a0, tasks[i].top, bound, results[i]);
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    Catalog c;
    c.degree = d;
    for (auto& r : results) c.polys.insert(c.polys.end(), r.begin(), r.end());
    std::sort(c.polys.begin(), c.polys.end());
    std::set<IntPolynomial> keys;
    for (const auto& p : c.polys) keys.insert(class_key(p));
    for (const auto& k : keys) c.classes.push_back({k, opposite(k) == k, {}, {}, {}});
    return c;
}

std::vector<IntPolynomial> enumerate_baseline(int d)
{
    if (d < 1 || d > 4) throw ValidationError("baseline sweep is limited to degree 1..4");
    const auto b = baseline_bounds(d);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1);
    std::vector<IntPolynomial> out;
    for (std::int64_t a0 : {-2, 2}) {
        c[0] = a0;
        c[static_cast<std::size_t>(d)] = 1;
        for (int i = 1; i < d; ++i) c[static_cast<std::size_t>(i)] = -b[static_cast<std::size_t>(i)];
        while (true) {
            IntPolynomial p(c);
            if (is_expanding(p)) out.push_back(std::move(p));
            int i = 1;
            for (; i < d; ++i) {
                auto& v = c[static_cast<std::size_t>(i)];
                if (v < b[static_cast<std::size_t>(i)]) {
                    ++v;
                    break;
                }
                v = -b[static_cast<std::size_t>(i)];
            }
            if (i >= d) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_classes(const Catalog& c) { return c.n_classes(); }

bool self_opposite_identity(const Catalog& c, const Catalog& half)
{
    if (c.degree % 2 != 0 || half.degree * 2 != c.degree) throw ValidationError("degree mismatch for the self-opposite identity");
    std::set<IntPolynomial> expected;
    for (const auto& q : half.polys) expected.insert(substitute_power(q, 2));
    std::set<IntPolynomial> actual;
    for (const auto& p : c.polys)
        if (opposite(p) == p) actual.insert(p);
    return expected == actual;
}

void annotate(Catalog& c)
{
    for (auto& cl : c.classes) {
        cl.isotropic = classify_isotropic(cl.key);
        const auto sys = DigitSystem::standard(cl.key);
        cl.tile = is_tile(sys);
        cl.alpha = holder_exponent(sys).alpha;
    }
}

double theoretical_upper_bound_log2(int d)
{
    if (d < 3) throw ValidationError("the bound needs d >= 3");
    const double x = d;
    return x * (1 + 16 * std::log(std::log(x)) / std::log(x));
}

double theoretical_upper_bound(int d) { return std::exp2(theoretical_upper_bound_log2(d)); }

}  // namespace twoattr
