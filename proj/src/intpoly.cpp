#include "twoattr/intpoly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace twoattr {

IntPolynomial::IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs))
{
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    if (c_.empty() || (c_.size() == 1 && c_[0] == 0)) throw ValidationError("zero polynomial");
}

IntPolynomial IntPolynomial::parse(std::string_view text) { return IntPolynomial(parse_int_list(text)); }

IntPolynomial IntPolynomial::monomial(int n, std::int64_t c)
{
    std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1, 0);
    v.back() = c;
    return IntPolynomial(std::move(v));
}

std::string IntPolynomial::str() const { return format_int_list(c_); }

std::string IntPolynomial::pretty() const
{
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        std::int64_t a = c_[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        if (!s.empty()) s += a > 0 ? "+" : "-";
        else if (a < 0) s += "-";
        std::int64_t m = a < 0 ? -a : a;
        if (m != 1 || k == 0) s += std::to_string(m);
        if (k >= 1) s += "z";
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

bool IntPolynomial::operator<(const IntPolynomial& o) const
{
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    return c_ < o.c_;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<std::int64_t> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) r[i] = checked_add(r[i], a.coeffs()[i]);
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) r[i] = checked_add(r[i], b.coeffs()[i]);
    return IntPolynomial(std::move(r));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<std::int64_t> neg(b.coeffs());
    for (auto& x : neg) x = checked_mul(x, -1);
    return a + IntPolynomial(std::move(neg));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<std::int64_t> r(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            r[i + j] = checked_add(r[i + j], checked_mul(a.coeffs()[i], b.coeffs()[j]));
    return IntPolynomial(std::move(r));
}

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.degree() > a.degree()) throw ValidationError("divisor degree exceeds dividend degree");
    std::vector<std::int64_t> rem(a.coeffs());
    std::vector<std::int64_t> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    const std::int64_t lead = b.leading();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        std::int64_t top = rem[static_cast<std::size_t>(k + b.degree())];
        if (top % lead != 0) throw ValidationError("inexact polynomial division");
        std::int64_t t = top / lead;
        q[static_cast<std::size_t>(k)] = t;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(k + j)] =
                checked_add(rem[static_cast<std::size_t>(k + j)], -checked_mul(t, b[j]));
    }
    for (auto x : rem)
        if (x != 0) throw ValidationError("inexact polynomial division");
    return IntPolynomial(std::move(q));
}

IntPolynomial substitute_power(const IntPolynomial& q, int k)
{
    if (k < 1) throw ValidationError("substitution power must be positive");
    std::vector<std::int64_t> r(static_cast<std::size_t>(q.degree() * k) + 1, 0);
    for (int i = 0; i <= q.degree(); ++i) r[static_cast<std::size_t>(i * k)] = q[i];
    return IntPolynomial(std::move(r));
}

std::complex<double> evaluate(const IntPolynomial& p, std::complex<double> z)
{
    std::complex<double> acc = 0;
    for (int k = p.degree(); k >= 0; --k) acc = acc * z + static_cast<double>(p[k]);
    return acc;
}

BigInt evaluate(const IntPolynomial& p, const BigInt& z)
{
    BigInt acc = 0;
    for (int k = p.degree(); k >= 0; --k) acc = acc * z + p[k];
    return acc;
}

bool is_admissible(const IntPolynomial& p)
{
    return p.degree() >= 1 && p.leading() == 1 && (p.free_term() == 2 || p.free_term() == -2);
}

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Schur-Cohn on f (ascending): are all roots strictly inside the unit circle?
// Returns 1 / 0, or -1 when the 128-bit path overflows.
int schur_cohn_i128(std::vector<i128> f)
{
    while (f.size() > 1) {
        const std::size_t n = f.size() - 1;
        const i128 f0 = f[0], fn = f[n];
        if (abs128(f0) >= abs128(fn)) return 0;
        std::vector<i128> g(n);
        i128 content = 0;
        for (std::size_t k = 0; k < n; ++k) {
            i128 t1, t2, d;
            if (__builtin_mul_overflow(fn, f[k + 1], &t1)) return -1;
            if (__builtin_mul_overflow(f0, f[n - 1 - k], &t2)) return -1;
            if (__builtin_sub_overflow(t1, t2, &d)) return -1;
            g[k] = d;
            content = gcd128(content, d);
        }
        if (content > 1)
            for (auto& x : g) x /= content;
        f.swap(g);
    }
    return f[0] != 0 ? 1 : 0;
}

bool schur_cohn_big(std::vector<BigInt> f)
{
    while (f.size() > 1) {
        const std::size_t n = f.size() - 1;
        const BigInt f0 = f[0], fn = f[n];
        if (abs(f0) >= abs(fn)) return false;
        std::vector<BigInt> g(n);
        BigInt content = 0;
        for (std::size_t k = 0; k < n; ++k) {
            g[k] = fn * f[k + 1] - f0 * f[n - 1 - k];
            content = gcd(content, g[k]);
        }
        if (content > 1)
            for (auto& x : g) x /= content;
        f.swap(g);
    }
    return f[0] != 0;
}

}  // namespace

bool is_expanding(const IntPolynomial& p)
{
    if (p.degree() < 1) throw ValidationError("is_expanding needs degree >= 1");
    if (p.free_term() == 0) return false;
    // p expanding <=> the reversal z^d p(1/z) is Schur stable
    const int d = p.degree();
    std::vector<i128> q(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) q[static_cast<std::size_t>(i)] = p[d - i];
    int r = schur_cohn_i128(q);
    if (r >= 0) return r == 1;
    std::vector<BigInt> qb(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) qb[static_cast<std::size_t>(i)] = p[d - i];
    return schur_cohn_big(std::move(qb));
}

double CertifiedRoot::modulus_lo() const { return std::max(0.0, std::abs(z) - radius); }
double CertifiedRoot::modulus_hi() const { return std::abs(z) + radius; }

RootSpectrum certified_roots(const IntPolynomial& p)
{
    using cld = std::complex<long double>;
    const int d = p.degree();
    RootSpectrum out;
    if (d < 1) return out;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
    const double lead = static_cast<double>(p.leading());
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -static_cast<double>(p[i]) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
    std::vector<cld> z(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = cld(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());

    auto eval = [&](cld x, cld* deriv, long double* bound) {
        cld v = 0, dv = 0;
        long double b = 0;
        for (int k = d; k >= 0; --k) {
            dv = dv * x + v;
            v = v * x + static_cast<long double>(p[k]);
            b = b * std::abs(x) + std::abs(static_cast<long double>(p[k]));
        }
        if (deriv) *deriv = dv;
        if (bound) *bound = b;
        return v;
    };
    // Newton polish; keep a step only if the residual drops
    for (auto& x : z) {
        for (int it = 0; it < 8; ++it) {
            cld dv;
            cld v = eval(x, &dv, nullptr);
            if (std::abs(dv) == 0) break;
            cld nx = x - v / dv;
            if (std::abs(eval(nx, nullptr, nullptr)) < std::abs(v)) x = nx;
            else break;
        }
    }
    // Weierstrass inclusion discs, inflated for rounding
    const long double eps = 8 * std::numeric_limits<long double>::epsilon();
    std::vector<long double> rad(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        long double bound;
        cld v = eval(z[static_cast<std::size_t>(i)], nullptr, &bound);
        cld den = static_cast<long double>(p.leading());
        for (int j = 0; j < d; ++j)
            if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
        long double r = std::abs(den) == 0 ? std::numeric_limits<long double>::infinity()
                                           : d * (std::abs(v) + eps * bound * (d + 2)) / std::abs(den);
        rad[static_cast<std::size_t>(i)] = r;
    }
    // overlapping discs form clusters; a cluster gets a common enclosing radius
    std::vector<int> comp(static_cast<std::size_t>(d));
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int a) { return comp[static_cast<std::size_t>(a)] == a ? a : comp[static_cast<std::size_t>(a)] = find(comp[static_cast<std::size_t>(a)]); };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <= rad[static_cast<std::size_t>(i)] + rad[static_cast<std::size_t>(j)])
                comp[static_cast<std::size_t>(find(i))] = find(j);
    for (int i = 0; i < d; ++i) {
        CertifiedRoot cr;
        cr.z = std::complex<double>(static_cast<double>(z[static_cast<std::size_t>(i)].real()), static_cast<double>(z[static_cast<std::size_t>(i)].imag()));
        long double r = rad[static_cast<std::size_t>(i)];
        for (int j = 0; j < d; ++j) {
            if (j == i || find(j) != find(i)) continue;
            cr.multiple = true;
            r = std::max(r, std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) + rad[static_cast<std::size_t>(j)]);
        }
        cr.radius = static_cast<double>(r) * (1 + 1e-12) + 1e-300;
        out.roots.push_back(cr);
    }
    return out;
}

MahlerMeasure mahler_measure(const IntPolynomial& p)
{
    MahlerMeasure m;
    const double lead = std::abs(static_cast<double>(p.leading()));
    if (p.degree() >= 1 && is_expanding(p)) {
        // every root is outside the unit disc, so the product is |a_0|
        m.value = m.lo = m.hi = std::abs(static_cast<double>(p.free_term()));
        m.exact = true;
        return m;
    }
    m.value = m.lo = m.hi = lead;
    if (p.degree() < 1) return m;
    for (const auto& r : certified_roots(p).roots) {
        m.value *= std::max(1.0, std::abs(r.z));
        m.lo *= std::max(1.0, r.modulus_lo());
        m.hi *= std::max(1.0, r.modulus_hi());
    }
    return m;
}

IntPolynomial opposite(const IntPolynomial& p)
{
    std::vector<std::int64_t> q(p.coeffs());
    const int d = p.degree();
    for (int k = 0; k <= d; ++k)
        if ((d - k) % 2 != 0) q[static_cast<std::size_t>(k)] = checked_mul(q[static_cast<std::size_t>(k)], -1);
    return IntPolynomial(std::move(q));
}

IntPolynomial class_key(const IntPolynomial& p)
{
    IntPolynomial q = opposite(p);
    return q.coeffs() < p.coeffs() ? q : p;
}

namespace {

// Catalog of admissible isotropic polynomials: z^d +- 2 for odd d, q(z^{d/2}) for even d.
std::optional<std::pair<IntPolynomial, int>> catalog_factor(const IntPolynomial& p, bool* odd_match)
{
    const int d = p.degree();
    *odd_match = false;
    if (d % 2 == 1) {
        bool inner_zero = true;
        for (int i = 1; i < d; ++i) inner_zero = inner_zero && p[i] == 0;
        *odd_match = inner_zero;
        return std::nullopt;
    }
    const int k = d / 2;
    for (int i = 1; i < d; ++i)
        if (i != k && p[i] != 0) return std::nullopt;
    const std::int64_t a0 = p[0], a1 = p[k];
    const bool known = (a1 == 0 && (a0 == 2 || a0 == -2)) ||
                       (a0 == 2 && (a1 == 2 || a1 == -2 || a1 == 1 || a1 == -1));
    if (!known) return std::nullopt;
    return std::make_pair(IntPolynomial({a0, a1, 1}), k);
}

bool numeric_isotropic(const IntPolynomial& p)
{
    double lo_max = 0, hi_min = std::numeric_limits<double>::infinity();
    for (const auto& r : certified_roots(p).roots) {
        lo_max = std::max(lo_max, r.modulus_lo());
        hi_min = std::min(hi_min, r.modulus_hi());
    }
    return lo_max <= hi_min;
}

}  // namespace

bool is_isotropic(const IntPolynomial& p)
{
    if (p.degree() < 1) return true;
    if (!is_admissible(p)) return numeric_isotropic(p);
    bool odd_match;
    bool catalog = catalog_factor(p, &odd_match).has_value() || odd_match;
    bool numeric = numeric_isotropic(p);
    if (catalog && !numeric)
        throw InternalError("isotropy catalog and root moduli disagree for " + p.str());
    if (!catalog && numeric) {
        // numeric overlap of wide discs is inconclusive; tight agreement is a contradiction
        double spread = 0;
        for (const auto& r : certified_roots(p).roots) spread = std::max(spread, r.radius);
        if (spread < 1e-9) throw InternalError("isotropy catalog misses " + p.str());
    }
    return catalog;
}

std::optional<std::pair<IntPolynomial, int>> isotropic_quadratic_factor(const IntPolynomial& p)
{
    if (!is_admissible(p)) throw ValidationError("isotropic_quadratic_factor needs an admissible polynomial");
    if (!is_isotropic(p)) throw ValidationError(p.str() + " is not isotropic");
    if (p.degree() % 2 == 1) return std::nullopt;
    bool odd_match;
    return catalog_factor(p, &odd_match);
}

}  // namespace twoattr
