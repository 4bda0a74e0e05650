#include "twoattr/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <Eigen/SVD>
#include "json.hpp"

namespace twoattr {

std::string ContactGraph::to_json() const
{
    nlohmann::json j;
    j["gamma"] = gamma;
    auto rows = [](const IntMatrix& m) {
        std::vector<std::vector<std::int64_t>> r(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) r[i].push_back(m(i, k));
        return r;
    };
    j["A"] = rows(A);
    for (const auto& t : T) j["T"].push_back(rows(t));
    return j.dump();
}

std::vector<double> difference_extent(const DigitSystem& sys)
{
    const std::size_t d = sys.dim();
    const Eigen::MatrixXd inv = to_eigen(inverse_rational(sys.M));
    const double tail_factor = inverse_power_norm_sum(sys.M);
    std::vector<Eigen::VectorXd> diffs;
    for (std::size_t i = 0; i < sys.D.size(); ++i)
        for (std::size_t j = 0; j < sys.D.size(); ++j) {
            if (i == j) continue;
            Eigen::VectorXd v(static_cast<Eigen::Index>(d));
            for (std::size_t t = 0; t < d; ++t) v(static_cast<Eigen::Index>(t)) = static_cast<double>(sys.D[i][t] - sys.D[j][t]);
            diffs.push_back(v);
        }
    std::vector<double> h(d, 0.0);
    for (int k = 1; k <= 4000; ++k) {
        double largest = 0;
        for (auto& v : diffs) {
            v = inv * v;
            largest = std::max(largest, v.norm());
        }
        for (std::size_t t = 0; t < d; ++t) {
            double mx = 0;
            for (const auto& v : diffs) mx = std::max(mx, std::abs(v(static_cast<Eigen::Index>(t))));
            h[t] += mx;
        }
        if (largest < 1e-13 || k == 4000) {
            // remaining terms M^{-j} (M^{-k} delta), j >= 1
            for (auto& x : h) x = (x + tail_factor * largest) * (1 + 1e-9) + 1e-12;
            break;
        }
    }
    return h;
}

namespace {

struct Box {
    std::vector<std::int64_t> half, stride;
    std::size_t total = 1;

    std::size_t code(const IntVector& s) const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < half.size(); ++i) c += static_cast<std::size_t>(s[i] + half[i]) * static_cast<std::size_t>(stride[i]);
        return c;
    }
    bool inside(const IntVector& s) const
    {
        for (std::size_t i = 0; i < half.size(); ++i)
            if (s[i] < -half[i] || s[i] > half[i]) return false;
        return true;
    }
    IntVector decode(std::size_t c) const
    {
        IntVector s(half.size());
        for (std::size_t i = 0; i < half.size(); ++i) {
            s[i] = static_cast<std::int64_t>(c / static_cast<std::size_t>(stride[i]) % static_cast<std::size_t>(2 * half[i] + 1)) - half[i];
        }
        return s;
    }
};

}  // namespace

ContactGraph contact_set(const DigitSystem& sys, std::size_t candidate_budget)
{
    const std::size_t d = sys.dim();
    const std::size_t m = sys.digit_count();
    std::vector<double> h = difference_extent(sys);
    const double radius = 2 * bounding_radius(sys);
    Box box;
    box.half.resize(d);
    box.stride.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        box.half[i] = static_cast<std::int64_t>(std::floor(std::min(h[i], radius)));
        box.stride[i] = static_cast<std::int64_t>(box.total);
        std::size_t width = static_cast<std::size_t>(2 * box.half[i] + 1);
        if (box.total > candidate_budget / width) throw BudgetError("contact candidate box exceeds budget");
        box.total *= width;
    }
    // candidates: integer points of the box inside the ball of radius 2R
    std::vector<char> alive(box.total, 0);
    for (std::size_t c = 0; c < box.total; ++c) {
        IntVector s = box.decode(c);
        double n2 = 0;
        for (auto x : s) n2 += static_cast<double>(x) * static_cast<double>(x);
        alive[c] = std::sqrt(n2) <= radius + 1e-9;
    }
    IntVector zero(d, 0);
    const std::size_t zero_code = box.code(zero);
    alive[zero_code] = 1;

    // differences a - b
    std::vector<IntVector> delta;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            IntVector v(d);
            for (std::size_t t = 0; t < d; ++t) v[t] = sys.D[a][t] - sys.D[b][t];
            delta.push_back(v);
        }
    auto successors = [&](const IntVector& s) {
        IntVector ms = multiply(sys.M, s);
        std::vector<std::size_t> out;
        for (const auto& dv : delta) {
            IntVector t(d);
            for (std::size_t i = 0; i < d; ++i) t[i] = ms[i] + dv[i];
            if (box.inside(t)) {
                std::size_t c = box.code(t);
                if (alive[c]) out.push_back(c);
            }
        }
        return out;
    };
    // prune to the fixed point
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < box.total; ++c) {
            if (!alive[c] || c == zero_code) continue;
            if (successors(box.decode(c)).empty()) {
                alive[c] = 0;
                changed = true;
            }
        }
    }
    ContactGraph g;
    for (std::size_t c = 0; c < box.total; ++c)
        if (alive[c]) g.gamma.push_back(box.decode(c));
    std::sort(g.gamma.begin(), g.gamma.end());
    const std::size_t n = g.gamma.size();
    g.zero_index = static_cast<std::size_t>(std::lower_bound(g.gamma.begin(), g.gamma.end(), zero) - g.gamma.begin());
    std::vector<std::int64_t> index(box.total, -1);
    for (std::size_t i = 0; i < n; ++i) index[box.code(g.gamma[i])] = static_cast<std::int64_t>(i);
    g.A = IntMatrix(n, n);
    g.T.assign(m, IntMatrix(n, n));
    for (std::size_t i = 0; i < n; ++i) {
        IntVector ms = multiply(sys.M, g.gamma[i]);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                IntVector t(d);
                for (std::size_t k = 0; k < d; ++k) t[k] = ms[k] + sys.D[a][k] - sys.D[b][k];
                if (!box.inside(t)) continue;
                std::int64_t j = index[box.code(t)];
                if (j < 0) continue;
                g.T[a](i, static_cast<std::size_t>(j)) += 1;
                g.A(i, static_cast<std::size_t>(j)) += 1;
            }
    }
    return g;
}

MeasureResult measure(const ContactGraph& g, std::size_t digit_count)
{
    const std::size_t n = g.size();
    const auto mval = static_cast<std::int64_t>(digit_count);
    MeasureResult r;
    if (n <= 60) {
        RationalMatrix a = to_rational(g.A);
        for (std::size_t i = 0; i < n; ++i) a(i, i) -= mval;
        auto ker = kernel(a);
        if (ker.size() != 1)
            throw InternalError("eigenvalue m of the contact matrix has geometric multiplicity " + std::to_string(ker.size()));
        const RationalVector& w = ker[0];
        if (w[g.zero_index] == 0) throw InternalError("overlap eigenvector vanishes at s = 0");
        Rational sum = 0;
        for (const auto& x : w) sum += x;
        Rational mu = sum / w[g.zero_index];
        r.exact = true;
        r.value = to_double(mu);
        if (!is_integer(mu)) throw InternalError("non-integral measure " + to_string(mu));
        r.measure = to_int64(numerator(mu));
        return r;
    }
    Eigen::MatrixXd a = to_eigen(g.A);
    a -= static_cast<double>(mval) * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    if (sv(last - 1) < 1e-8 * std::max(1.0, sv(0)))
        throw InternalError("eigenvalue m of the contact matrix is not simple (floating path)");
    Eigen::VectorXd w = svd.matrixV().col(last);
    r.residual = (a * w).norm() / w.norm();
    if (r.residual > 1e-9) throw InternalError("overlap eigenvector residual too large");
    const double w0 = w(static_cast<Eigen::Index>(g.zero_index));
    if (std::abs(w0) < 1e-12) throw InternalError("overlap eigenvector vanishes at s = 0");
    r.value = w.sum() / w0;
    const double rounded = std::round(r.value);
    if (std::abs(r.value - rounded) >= 1e-6) throw InternalError("measure is not within 1e-6 of an integer");
    r.measure = static_cast<std::int64_t>(rounded);
    return r;
}

LatticeReduction reduce_to_primitive(const DigitSystem& sys)
{
    const std::size_t d = sys.dim();
    // generators M^k (d_i - d_0), k < d, as rows
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t i = 1; i < sys.digit_count(); ++i) {
        std::vector<BigInt> v(d);
        for (std::size_t t = 0; t < d; ++t) v[t] = BigInt(sys.D[i][t]) - sys.D[0][t];
        for (std::size_t k = 0; k < d; ++k) {
            rows.push_back(v);
            std::vector<BigInt> w(d, 0);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) w[r] += BigInt(sys.M(r, c)) * v[c];
            v = std::move(w);
        }
    }
    // integer row echelon form by repeated Euclidean steps
    std::vector<std::vector<BigInt>> basis;
    std::size_t top = 0;
    for (std::size_t col = 0; col < d && top < rows.size(); ++col) {
        while (true) {
            std::size_t piv = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][col] != 0 && (piv == rows.size() || abs(rows[r][col]) < abs(rows[piv][col]))) piv = r;
            if (piv == rows.size()) break;
            std::swap(rows[top], rows[piv]);
            bool done = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                const BigInt q = rows[r][col] / rows[top][col];
                for (std::size_t c = 0; c < d; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) done = false;
            }
            if (done) {
                basis.push_back(rows[top]);
                ++top;
                break;
            }
        }
    }
    LatticeReduction lr;
    lr.full_rank = basis.size() == d;
    if (!lr.full_rank) return lr;
    lr.P = IntMatrix(d, d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) lr.P(i, j) = to_int64(basis[j][i]);
    lr.index = to_int64(abs(determinant(lr.P)));
    const RationalMatrix Pinv = inverse_rational(lr.P);
    const RationalMatrix Mr = multiply(multiply(Pinv, to_rational(sys.M)), to_rational(lr.P));
    IntMatrix M2(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (!is_integer(Mr(i, j))) throw InternalError("digit lattice is not invariant under M");
            M2(i, j) = to_int64(numerator(Mr(i, j)));
        }
    std::vector<IntVector> D2;
    for (const auto& dg : sys.D) {
        RationalVector diff(d);
        for (std::size_t t = 0; t < d; ++t) diff[t] = Rational(dg[t]) - sys.D[0][t];
        const RationalVector x = multiply(Pinv, diff);
        IntVector v(d);
        for (std::size_t t = 0; t < d; ++t) {
            if (!is_integer(x[t])) throw InternalError("digit outside the digit lattice");
            v[t] = to_int64(numerator(x[t]));
        }
        D2.push_back(std::move(v));
    }
    lr.reduced = DigitSystem::make(std::move(M2), std::move(D2));
    return lr;
}

MeasureResult measure(const DigitSystem& sys)
{
    const LatticeReduction lr = reduce_to_primitive(sys);
    if (!lr.full_rank) {
        MeasureResult r;
        r.exact = true;
        return r;
    }
    MeasureResult r = measure(contact_set(lr.reduced), sys.digit_count());
    r.measure = checked_mul(r.measure, lr.index);
    r.value *= static_cast<double>(lr.index);
    return r;
}

TileVerdict tile_check(const DigitSystem& sys)
{
    TileVerdict v;
    const LatticeReduction lr = reduce_to_primitive(sys);
    if (!lr.full_rank) {
        v.lattice_index = 0;
        return v;
    }
    v.lattice_index = lr.index;
    ContactGraph g = contact_set(lr.reduced);
    v.gamma_size = g.size();
    v.measure = checked_mul(measure(g, sys.digit_count()).measure, lr.index);
    const std::size_t n = g.size();
    Eigen::MatrixXd rest(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1));
    for (std::size_t i = 0, ri = 0; i < n; ++i) {
        if (i == g.zero_index) continue;
        for (std::size_t j = 0, rj = 0; j < n; ++j) {
            if (j == g.zero_index) continue;
            rest(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(rj++)) = static_cast<double>(g.A(i, j));
        }
        ++ri;
    }
    v.rho_without_zero = n > 1 ? spectral_radius(rest) : 0.0;
    const double m = static_cast<double>(sys.digit_count());
    const bool by_measure = v.measure == 1;
    const bool by_radius = lr.index == 1 && v.rho_without_zero < m - 1e-9;
    if (by_measure != by_radius)
        throw InternalError("tile criteria disagree: measure " + std::to_string(v.measure) + ", restricted spectral radius " +
                            std::to_string(v.rho_without_zero));
    v.tile = by_measure;
    return v;
}

bool is_tile(const DigitSystem& sys) { return tile_check(sys).tile; }

bool residue_test(const DigitSystem& sys, int k, std::size_t budget)
{
    if (k < 1) throw ValidationError("residue_test needs k >= 1");
    const std::size_t m = sys.digit_count();
    const std::size_t d = sys.dim();
    std::size_t count = 1;
    for (int j = 0; j < k; ++j) {
        if (count > budget / m) throw BudgetError("m^k exceeds the residue-test budget");
        count *= m;
    }
    const std::int64_t det = to_int64(abs(determinant(sys.M)));
    std::int64_t mod = 1;
    for (int j = 0; j < k; ++j) mod = checked_mul(mod, det);
    auto reduce = [mod](__int128 x) {
        __int128 r = x % mod;
        return static_cast<std::int64_t>(r < 0 ? r + mod : r);
    };
    auto matmul_mod = [&](const IntMatrix& a, const IntMatrix& b) {
        IntMatrix c(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                __int128 s = 0;
                for (std::size_t t = 0; t < d; ++t) s = reduce(s + static_cast<__int128>(a(i, t)) * b(t, j));
                c(i, j) = reduce(s);
            }
        return c;
    };
    IntMatrix adj = adjugate(sys.M);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) adj(i, j) = reduce(adj(i, j));
    IntMatrix adjk = IntMatrix::identity(d), mpow = IntMatrix::identity(d);
    for (int j = 0; j < k; ++j) adjk = matmul_mod(adjk, adj);
    IntMatrix mred = sys.M;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) mred(i, j) = reduce(mred(i, j));

    // sums x = sum_j M^j d_j built level by level, reduced mod |det|^k
    std::vector<IntVector> sums{IntVector(d, 0)};
    for (int j = 0; j < k; ++j) {
        std::vector<IntVector> shifted;
        for (const auto& dg : sys.D) {
            IntVector v(d);
            for (std::size_t i = 0; i < d; ++i) {
                __int128 s = 0;
                for (std::size_t t = 0; t < d; ++t) s += static_cast<__int128>(mpow(i, t)) * reduce(dg[t]);
                v[i] = reduce(s);
            }
            shifted.push_back(v);
        }
        std::vector<IntVector> next;
        next.reserve(sums.size() * m);
        for (const auto& s : sums)
            for (const auto& v : shifted) {
                IntVector x(d);
                for (std::size_t i = 0; i < d; ++i) x[i] = reduce(static_cast<__int128>(s[i]) + v[i]);
                next.push_back(std::move(x));
            }
        sums.swap(next);
        mpow = matmul_mod(mpow, mred);
    }
    std::vector<IntVector> keys;
    keys.reserve(sums.size());
    for (const auto& x : sums) {
        IntVector key(d);
        for (std::size_t i = 0; i < d; ++i) {
            __int128 s = 0;
            for (std::size_t t = 0; t < d; ++t) s = reduce(s + static_cast<__int128>(adjk(i, t)) * x[t]);
            key[i] = reduce(s);
        }
        keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

}  // namespace twoattr
