#include "twoattr/attract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <thread>

#include <Eigen/SVD>

namespace twoattr {

DigitSystem DigitSystem::make(IntMatrix M, std::vector<IntVector> D)
{
    if (M.rows() != M.cols() || M.rows() == 0) throw ValidationError("dilation matrix must be square");
    if (M.rows() > 16) throw ValidationError("dimension above 16 is not supported");
    if (!is_expanding(char_poly(M))) throw ValidationError("dilation matrix is not expanding");
    if (!validate_digits(M, D)) throw ValidationError("digits are not in distinct residue classes mod M");
    return DigitSystem{std::move(M), std::move(D)};
}

DigitSystem DigitSystem::standard(const IntPolynomial& p)
{
    IntMatrix M = companion(p);
    IntVector zero(M.rows(), 0), e1(M.rows(), 0);
    e1[0] = 1;
    return make(std::move(M), {zero, e1});
}

DigitSystem DigitSystem::parse(std::string_view matrix, std::string_view digits)
{
    IntMatrix M = parse_matrix(matrix);
    std::vector<IntVector> D;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = digits.find(';', pos);
        D.push_back(parse_int_list(digits.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return make(std::move(M), std::move(D));
}

std::vector<RationalVector> PointCloud::points() const
{
    std::vector<RationalVector> out;
    out.reserve(numerators.size());
    for (const auto& n : numerators) {
        RationalVector v;
        for (auto x : n) v.emplace_back(Rational(x, denominator));
        out.push_back(std::move(v));
    }
    return out;
}

std::string PointCloud::to_text() const
{
    std::string s;
    for (const auto& p : points()) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) s += ',';
            s += to_string(p[i]);
        }
        s += '\n';
    }
    return s;
}

namespace {

struct DepthTable {
    std::int64_t denominator = 1;
    // w[j][t]: contribution of digit t at position j+1, over the common denominator
    std::vector<std::vector<IntVector>> w;
};

DepthTable depth_table(const DigitSystem& sys, int depth)
{
    const std::size_t d = sys.dim();
    std::int64_t det = to_int64(determinant(sys.M));
    IntMatrix adj = adjugate(sys.M);
    DepthTable tab;
    std::int64_t dk = 1;
    for (int j = 0; j < depth; ++j) dk = checked_mul(dk, det);
    const std::int64_t sign = dk < 0 ? -1 : 1;
    tab.denominator = dk * sign;
    // det^{k-j} adj^j a
    std::vector<IntVector> cur = sys.D;
    tab.w.resize(static_cast<std::size_t>(depth));
    for (int j = 1; j <= depth; ++j) {
        for (auto& v : cur) v = multiply(adj, v);
        std::vector<IntVector> scaled = cur;
        for (auto& v : scaled)
            for (auto& x : v) {
                for (int t = 0; t < depth - j; ++t) x = checked_mul(x, det);
                x = checked_mul(x, sign);
            }
        tab.w[static_cast<std::size_t>(j - 1)] = std::move(scaled);
    }
    // every partial sum must fit
    for (std::size_t i = 0; i < d; ++i) {
        std::int64_t bound = 0;
        for (const auto& level : tab.w) {
            std::int64_t mx = 0;
            for (const auto& v : level) mx = std::max(mx, v[i] < 0 ? checked_mul(v[i], -1) : v[i]);
            bound = checked_add(bound, mx);
        }
    }
    return tab;
}

std::size_t checked_count(std::size_t m, int depth, std::size_t budget)
{
    std::size_t n = 1;
    for (int j = 0; j < depth; ++j) {
        if (n > budget / m) throw BudgetError("depth " + std::to_string(depth) + " exceeds the point budget of " + std::to_string(budget));
        n *= m;
    }
    if (n > budget) throw BudgetError("depth " + std::to_string(depth) + " exceeds the point budget of " + std::to_string(budget));
    return n;
}

}  // namespace

void for_each_point(const DigitSystem& sys, int depth, unsigned workers,
                    const std::function<void(unsigned, const IntVector&, std::size_t)>& fn, std::size_t budget)
{
    if (depth < 1) throw ValidationError("depth must be at least 1");
    const std::size_t m = sys.digit_count();
    checked_count(m, depth, budget);
    DepthTable tab = depth_table(sys, depth);
    const std::size_t d = sys.dim();
    workers = std::max(1u, workers);

    // prefixes of length p handed out round-robin
    int p = 0;
    std::size_t tasks = 1;
    while (p < depth && tasks < 8 * static_cast<std::size_t>(workers)) {
        tasks *= m;
        ++p;
    }
    auto run = [&](unsigned wid) {
        IntVector acc(d);
        std::vector<IntVector> stack(static_cast<std::size_t>(depth) + 1, IntVector(d, 0));
        for (std::size_t task = wid; task < tasks; task += workers) {
            std::size_t code = task;
            std::vector<std::size_t> prefix(static_cast<std::size_t>(p));
            for (int j = p - 1; j >= 0; --j) {
                prefix[static_cast<std::size_t>(j)] = code % m;
                code /= m;
            }
            std::fill(stack[0].begin(), stack[0].end(), 0);
            for (int j = 0; j < p; ++j) {
                const IntVector& w = tab.w[static_cast<std::size_t>(j)][prefix[static_cast<std::size_t>(j)]];
                for (std::size_t i = 0; i < d; ++i) stack[static_cast<std::size_t>(j) + 1][i] = stack[static_cast<std::size_t>(j)][i] + w[i];
            }
            const std::size_t first = p > 0 ? prefix[0] : 0;
            // iterative DFS over the remaining positions
            std::vector<std::size_t> choice(static_cast<std::size_t>(depth), 0);
            int level = p;
            if (level == depth) {
                fn(wid, stack[static_cast<std::size_t>(depth)], first);
                continue;
            }
            choice[static_cast<std::size_t>(level)] = 0;
            while (level >= p) {
                std::size_t c = choice[static_cast<std::size_t>(level)];
                if (c == m) {
                    --level;
                    if (level >= p) ++choice[static_cast<std::size_t>(level)];
                    continue;
                }
                const IntVector& w = tab.w[static_cast<std::size_t>(level)][c];
                IntVector& next = stack[static_cast<std::size_t>(level) + 1];
                const IntVector& cur = stack[static_cast<std::size_t>(level)];
                for (std::size_t i = 0; i < d; ++i) next[i] = cur[i] + w[i];
                if (level + 1 == depth) {
                    fn(wid, next, p > 0 ? first : c);
                    ++choice[static_cast<std::size_t>(level)];
                } else {
                    ++level;
                    choice[static_cast<std::size_t>(level)] = 0;
                }
            }
        }
    };
    if (workers == 1) {
        run(0);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
}

PointCloud point_cloud(const DigitSystem& sys, int depth, std::size_t budget, unsigned workers)
{
    workers = std::max(1u, workers);
    std::vector<std::vector<IntVector>> parts(workers);
    for_each_point(
        sys, depth, workers, [&](unsigned w, const IntVector& n, std::size_t) { parts[w].push_back(n); }, budget);
    PointCloud pc;
    pc.depth = depth;
    pc.denominator = depth_table(sys, depth).denominator;
    for (auto& part : parts)
        for (auto& n : part) pc.numerators.push_back(std::move(n));
    std::sort(pc.numerators.begin(), pc.numerators.end());
    pc.numerators.erase(std::unique(pc.numerators.begin(), pc.numerators.end()), pc.numerators.end());
    return pc;
}

IntVector full_digit_sum(const DigitSystem& sys, int depth)
{
    if (sys.digit_count() != 2) throw ValidationError("two-digit system expected");
    DepthTable tab = depth_table(sys, depth);
    IntVector s(sys.dim(), 0);
    for (const auto& level : tab.w)
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = checked_add(s[i], checked_add(level[0][i], level[1][i]));
    return s;
}

RationalVector symmetry_center(const DigitSystem& sys)
{
    if (sys.digit_count() != 2) throw ValidationError("symmetry_center needs two digits");
    for (auto x : sys.D[0])
        if (x != 0) throw ValidationError("symmetry_center needs the first digit to be 0");
    const std::size_t d = sys.dim();
    RationalMatrix mi = to_rational(sys.M);
    for (std::size_t i = 0; i < d; ++i) mi(i, i) -= 1;
    RationalVector a(d);
    for (std::size_t i = 0; i < d; ++i) a[i] = sys.D[1][i];
    RationalVector c = multiply(inverse_rational(mi), a);
    for (auto& x : c) x /= 2;
    return c;
}

double inverse_power_norm_sum(const IntMatrix& M)
{
    Eigen::MatrixXd inv = to_eigen(inverse_rational(M));
    auto norm2 = [](const Eigen::MatrixXd& a) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        return svd.singularValues()(0);
    };
    Eigen::MatrixXd pw = inv;
    double head = 0;      // sum_{k=1}^{K} n_k
    double partial = 1;   // sum_{r=0}^{K-1} n_r
    for (int k = 1; k <= 100000; ++k) {
        double nk = norm2(pw);
        head += nk;
        if (nk < 0.25) {
            // k' = qK + r, q >= 1: n_{k'} <= n_K^q n_r
            double tail = partial * nk / (1 - nk);
            return (head + tail) * (1 + 1e-9);
        }
        partial += nk;
        pw = pw * inv;
    }
    throw InternalError("inverse powers do not contract");
}

double bounding_radius(const DigitSystem& sys)
{
    double maxd = 0;
    for (const auto& v : sys.D) {
        double s = 0;
        for (auto x : v) s += static_cast<double>(x) * static_cast<double>(x);
        maxd = std::max(maxd, std::sqrt(s));
    }
    return maxd * inverse_power_norm_sum(sys.M);
}

IntMatrix block_dilation(const IntPolynomial& q, int k)
{
    if (q.degree() != 2 || !is_admissible(q)) throw ValidationError("block_dilation needs an admissible quadratic");
    if (k < 1) throw ValidationError("block count must be positive");
    const auto n = static_cast<std::size_t>(2 * k);
    IntMatrix M(n, n);
    for (std::size_t b = 0; b + 1 < static_cast<std::size_t>(k); ++b) {
        M(2 * b, 2 * b + 2) = 1;
        M(2 * b + 1, 2 * b + 3) = 1;
    }
    IntMatrix a = companion(q);
    const std::size_t r0 = n - 2;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) M(r0 + i, j) = a(i, j);
    return M;
}

std::string AttractorClass::name() const
{
    switch (kind) {
    case Kind::Parallelepiped: return "Parallelepiped";
    case Kind::DragonProduct: return "DragonProduct(" + std::to_string(k) + ")";
    case Kind::BearProduct: return "BearProduct(" + std::to_string(k) + ")";
    case Kind::Anisotropic: return "Anisotropic";
    }
    return "Anisotropic";
}

AttractorClass classify_isotropic(const IntPolynomial& p)
{
    if (!is_admissible(p) || !is_expanding(p)) throw ValidationError(p.str() + " is not an admissible expanding polynomial");
    AttractorClass c;
    if (!is_isotropic(p)) return c;
    const int d = p.degree();
    if (d % 2 == 1) {
        c.kind = AttractorClass::Kind::Parallelepiped;
        c.k = d;
        return c;
    }
    auto f = isotropic_quadratic_factor(p);
    if (!f) throw InternalError("isotropic even-degree polynomial without quadratic factor");
    c.k = f->second;
    const std::int64_t mid = f->first[1];
    if (mid == 0) c.kind = AttractorClass::Kind::Parallelepiped;
    else if (mid == 2 || mid == -2) c.kind = AttractorClass::Kind::DragonProduct;
    else c.kind = AttractorClass::Kind::BearProduct;
    return c;
}

SimilarityCheck progression_similarity_check(const IntMatrix& M, const IntVector& q1, const IntVector& q2, int depth)
{
    const std::int64_t m = to_int64(abs(determinant(M)));
    auto progression = [&](const IntVector& q) {
        std::vector<IntVector> D;
        for (std::int64_t t = 0; t < m; ++t) {
            IntVector v(q.size());
            for (std::size_t i = 0; i < q.size(); ++i) v[i] = checked_mul(q[i], t);
            D.push_back(v);
        }
        return DigitSystem::make(M, D);
    };
    DigitSystem s1 = progression(q1), s2 = progression(q2);
    RationalVector b(q2.begin(), q2.end());
    SimilarityCheck out;
    out.C = find_commuting_map(M, q1, b);
    PointCloud c1 = point_cloud(s1, depth), c2 = point_cloud(s2, depth);
    const std::size_t d = M.rows();
    BigInt lcm = 1;
    for (const auto& x : out.C.data()) lcm = boost::multiprecision::lcm(lcm, denominator(x));
    std::set<std::vector<BigInt>> lhs, rhs;
    for (const auto& n : c1.numerators) {
        std::vector<BigInt> v(d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) v[i] += numerator(Rational(out.C(i, j) * lcm)) * n[j];
        lhs.insert(std::move(v));
    }
    for (const auto& n : c2.numerators) {
        std::vector<BigInt> v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = lcm * n[i];
        rhs.insert(std::move(v));
    }
    out.equal = c1.denominator == c2.denominator && lhs == rhs;
    return out;
}

}  // namespace twoattr
