#include "twoattr/series.hpp"

#include <numeric>

namespace twoattr {

namespace {

struct TagInfo {
    SeriesTag tag;
    const char* name;
    std::size_t arity;
};

const TagInfo kTags[] = {
    {SeriesTag::S1a, "1a", 2}, {SeriesTag::S1b, "1b", 2}, {SeriesTag::S2a, "2a", 2}, {SeriesTag::S2b, "2b", 2},
    {SeriesTag::S2c, "2c", 2}, {SeriesTag::S3a, "3a", 2}, {SeriesTag::S3b, "3b", 2}, {SeriesTag::S4a, "4a", 3},
    {SeriesTag::S4b, "4b", 3}, {SeriesTag::S5, "5", 2},   {SeriesTag::S6, "6", 2},   {SeriesTag::S7, "7", 3},
};

const TagInfo& info(SeriesTag t)
{
    for (const auto& i : kTags)
        if (i.tag == t) return i;
    throw InternalError("unknown series tag");
}

// 1 + c z^n
IntPolynomial binom(int n, std::int64_t c)
{
    std::vector<std::int64_t> v(static_cast<std::size_t>(n) + 1, 0);
    v[0] += 1;
    v[static_cast<std::size_t>(n)] += c;
    return IntPolynomial(std::move(v));
}

IntPolynomial constant(std::int64_t c) { return IntPolynomial({c}); }

IntPolynomial zpow(int n) { return IntPolynomial::monomial(n); }

}  // namespace

bool series4b_unit_root(int m, int q, int k)
{
    // z = e^{2 pi i t}: m t = -1/6 forces t = (6n - 1) / (6m); then check q t = -1/6
    // and k t = 1/3 modulo 1. Conjugation covers the mirrored angles.
    const std::int64_t M = 6 * static_cast<std::int64_t>(m);
    for (std::int64_t n = 0; n < M; ++n) {
        const std::int64_t u = 6 * n - 1;
        if ((q * u + m) % M == 0 && (k * u - 2 * m) % M == 0) return true;
    }
    return false;
}

std::string SeriesId::str() const
{
    std::string s = series_name(tag) + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(params[i]);
    }
    if (tag == SeriesTag::S6) s += sign > 0 ? ",+" : ",-";
    return s + ")";
}

SeriesTag parse_series_tag(std::string_view name)
{
    if (!name.empty() && (name.front() == 'S' || name.front() == 's')) name.remove_prefix(1);
    for (const auto& i : kTags)
        if (name == i.name) return i.tag;
    throw ValidationError("unknown series '" + std::string(name) + "'");
}

std::string series_name(SeriesTag tag) { return info(tag).name; }
std::size_t series_arity(SeriesTag tag) { return info(tag).arity; }

const std::vector<SeriesTag>& all_series_tags()
{
    static const std::vector<SeriesTag> tags = [] {
        std::vector<SeriesTag> v;
        for (const auto& i : kTags) v.push_back(i.tag);
        return v;
    }();
    return tags;
}

std::optional<std::string> series_violation(const SeriesId& id)
{
    if (id.params.size() != series_arity(id.tag))
        return "series " + series_name(id.tag) + " takes " + std::to_string(series_arity(id.tag)) + " parameters";
    for (int p : id.params)
        if (p < 1) return std::string("parameters must be natural numbers");
    if (id.tag == SeriesTag::S6 && id.sign != 1 && id.sign != -1) return std::string("sign must be +1 or -1");
    const int m = id.params[0], q = id.params[1];
    const int g = std::gcd(m, q);
    switch (id.tag) {
    case SeriesTag::S1a:
        if (!(m > q)) return std::string("m > q >= 1");
        break;
    case SeriesTag::S1b:
        if (!(m > q)) return std::string("m > q >= 1");
        if ((m / g) % 2 == 0 || (q / g) % 2 == 0) return std::string("m/(m,q) and q/(m,q) odd");
        break;
    case SeriesTag::S2a:
        if (!(m > q)) return std::string("m > q >= 1");
        if ((q / g) % 2 == 0) return std::string("q/(m,q) odd");
        break;
    case SeriesTag::S2b:
        if (!(q > m)) return std::string("q > m >= 1");
        if ((q / g) % 2 == 0) return std::string("q/(m,q) odd");
        break;
    case SeriesTag::S2c:
        if (!(m > q)) return std::string("m > q >= 1");
        if ((m / g) % 2 == (q / g) % 2) return std::string("m/(m,q) and q/(m,q) of different parity");
        break;
    case SeriesTag::S3a:
    case SeriesTag::S3b:
    case SeriesTag::S6:
    case SeriesTag::S7: break;
    case SeriesTag::S4a:
        if (is_bad_vector(m, q, id.params[2])) return std::string("(m,q,k) good (not a bad vector)");
        break;
    case SeriesTag::S4b: {
        const int k = id.params[2];
        if ((m - q) % 3 == 0 && ((k + m) % 3) == 0) return std::string("not (m = q and k = -m mod 3)");
        if (series4b_unit_root(m, q, k)) return std::string("no unit root with z^m = z^q = e^{-i pi/3}, z^k = e^{2i pi/3}");
        break;
    }
    case SeriesTag::S5:
        if ((m - q) % 4 == 0) return std::string("m != q mod 4");
        break;
    }
    return std::nullopt;
}

IntPolynomial generate(const SeriesId& id, bool override_validity)
{
    if (id.params.size() != series_arity(id.tag)) throw ValidationError(*series_violation(id));
    if (auto v = series_violation(id); v && !override_validity)
        throw ValidationError("series " + series_name(id.tag) + " requires " + *v);
    for (int p : id.params)
        if (p < 1) throw ValidationError("parameters must be natural numbers");
    const int m = id.params[0], q = id.params[1];
    const int g = std::gcd(m, q);
    const IntPolynomial one = constant(1);
    switch (id.tag) {
    case SeriesTag::S1a: return divide_exact(zpow(m) + zpow(q) - constant(2), zpow(g) - one);
    case SeriesTag::S1b: return divide_exact(zpow(m) + zpow(q) + constant(2), zpow(g) + one);
    case SeriesTag::S2a: return zpow(m) - zpow(q) + constant(2);
    case SeriesTag::S2b: return zpow(q) - zpow(m) - constant(2);
    case SeriesTag::S2c: return zpow(m) + zpow(q) + constant(2);
    case SeriesTag::S3a: return binom(m, 1) * binom(q, 1) + one;
    case SeriesTag::S3b: return (zpow(m) - one) * (zpow(q) - one) + one;
    case SeriesTag::S4a: return binom(m, 1) * binom(q, 1) * binom(id.params[2], 1) + one;
    case SeriesTag::S4b: return binom(m, -1) * binom(q, -1) * binom(id.params[2], 1) + one;
    case SeriesTag::S5: return (binom(m, 1) + zpow(2 * m)) * (binom(q, 1) + zpow(2 * q)) + one;
    case SeriesTag::S6: return binom(m, 1) * (binom(q, id.sign) + zpow(2 * q)) + one;
    case SeriesTag::S7: {
        const int a = m, b = q, k = id.params[2];
        IntPolynomial p = binom(a, 1) * binom(b, 1);
        for (int j = 0; j <= k; ++j) p = p * binom((a + b) << j, 1);
        return p + one;
    }
    }
    throw InternalError("unhandled series");
}

int series_degree(const SeriesId& id)
{
    const int m = id.params[0], q = id.params[1];
    switch (id.tag) {
    case SeriesTag::S1a:
    case SeriesTag::S1b: return m - std::gcd(m, q);
    case SeriesTag::S2a:
    case SeriesTag::S2c: return m;
    case SeriesTag::S2b: return q;
    case SeriesTag::S3a:
    case SeriesTag::S3b: return m + q;
    case SeriesTag::S4a:
    case SeriesTag::S4b: return m + q + id.params[2];
    case SeriesTag::S5: return 2 * (m + q);
    case SeriesTag::S6: return m + 2 * q;
    case SeriesTag::S7: return (m + q) << (id.params[2] + 1);
    }
    return 0;
}

std::vector<SeriesId> series_grid(int max_degree)
{
    std::vector<SeriesId> out;
    auto push = [&](SeriesTag t, std::vector<int> p, int sign = 1) {
        SeriesId id{t, std::move(p), sign};
        if (!series_violation(id)) out.push_back(std::move(id));
    };
    for (int m = 1; m <= 12; ++m)
        for (int q = 1; q <= 12; ++q)
            for (SeriesTag t : {SeriesTag::S1a, SeriesTag::S1b, SeriesTag::S2a, SeriesTag::S2b, SeriesTag::S2c}) push(t, {m, q});
    for (int m = 1; m <= max_degree; ++m)
        for (int q = 1; m + q <= max_degree; ++q) {
            push(SeriesTag::S3a, {m, q});
            push(SeriesTag::S3b, {m, q});
            for (int k = 1; m + q + k <= max_degree; ++k) {
                push(SeriesTag::S4a, {m, q, k});
                push(SeriesTag::S4b, {m, q, k});
            }
        }
    for (int m = 1; m <= 5; ++m)
        for (int q = 1; q <= 5; ++q) push(SeriesTag::S5, {m, q});
    for (int m = 1; m <= max_degree; ++m)
        for (int r = 1; m + 2 * r <= max_degree; ++r) {
            push(SeriesTag::S6, {m, r}, 1);
            push(SeriesTag::S6, {m, r}, -1);
        }
    for (int a = 1; a <= max_degree; ++a)
        for (int b = 1; b <= max_degree; ++b)
            for (int k = 1; ((a + b) << (k + 1)) <= max_degree; ++k) push(SeriesTag::S7, {a, b, k});
    return out;
}

bool is_bad_vector(std::int64_t n1, std::int64_t n2, std::int64_t n3)
{
    if (n1 < 1 || n2 < 1 || n3 < 1) throw ValidationError("bad-vector test needs natural components");
    while (n1 % 3 == 0 && n2 % 3 == 0 && n3 % 3 == 0) {
        n1 /= 3;
        n2 /= 3;
        n3 /= 3;
    }
    const std::int64_t s = n1 % 3;
    return s != 0 && n2 % 3 == s && n3 % 3 == s;
}

std::int64_t count_partitions3(std::int64_t d)
{
    std::int64_t c = 0;
    for (std::int64_t a = 1; 3 * a <= d; ++a)
        for (std::int64_t b = a; a + 2 * b <= d; ++b) ++c;
    return c;
}

std::int64_t count_partitions3_nonneg(std::int64_t n)
{
    if (n < 0) return 0;
    return count_partitions3(n + 3);
}

std::int64_t good_partitions_brute(std::int64_t d)
{
    std::int64_t c = 0;
    for (std::int64_t a = 1; 3 * a <= d; ++a)
        for (std::int64_t b = a; a + 2 * b <= d; ++b)
            if (!is_bad_vector(a, b, d - a - b)) ++c;
    return c;
}

std::int64_t good_partitions_formula(std::int64_t d)
{
    std::int64_t bad = 0;
    for (std::int64_t p = 3; d % p == 0; p *= 3)
        for (std::int64_t s = 1; s <= 2; ++s) bad += count_partitions3_nonneg(d / p - s);
    return count_partitions3(d) - bad;
}

std::int64_t count_good_partitions(std::int64_t d)
{
    const std::int64_t brute = good_partitions_brute(d);
    const std::int64_t formula = good_partitions_formula(d);
    if (brute != formula)
        throw InternalError("good-partition count disagreement at d=" + std::to_string(d) + ": " + std::to_string(brute) +
                            " vs " + std::to_string(formula));
    return brute;
}

Bounds ser4_bounds(std::int64_t d)
{
    const double x = static_cast<double>(d);
    return {x * x / 16 - 43 * x / 36 - 5.0 / 6, 7 * x * x / 108 + 5 * x / 12 + 2.0 / 3};
}

Bounds three_part_bounds(std::int64_t d)
{
    const double r = static_cast<double>(d % 3);
    const double x = static_cast<double>(d);
    const double mid = (x * (x - 1) - r * (r - 1)) / 12;
    return {mid - 0.5, mid + 0.5};
}

double three_part_omega(std::int64_t d)
{
    const double x = static_cast<double>(d);
    return static_cast<double>(count_partitions3(d)) - x * (x - 1) / 12;
}

}  // namespace twoattr
