#include "twoattr/mat.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace twoattr {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

using BigMatrix = Matrix<BigInt>;

BigMatrix to_big(const IntMatrix& m)
{
    BigMatrix b(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
    return b;
}

void require_square(std::size_t r, std::size_t c, const char* what)
{
    if (r != c) throw ValidationError(std::string(what) + " needs a square matrix");
}

}  // namespace

IntMatrix parse_matrix(std::string_view text)
{
    auto rows = split(text, ';');
    std::vector<std::vector<std::int64_t>> vals;
    for (auto r : rows) vals.push_back(parse_int_list(r));
    const std::size_t n = vals.size();
    IntMatrix m(n, vals[0].size());
    for (std::size_t i = 0; i < n; ++i) {
        if (vals[i].size() != m.cols()) throw ValidationError("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = vals[i][j];
    }
    return m;
}

std::string format_matrix(const IntMatrix& m)
{
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ';';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ',';
            s += std::to_string(m(i, j));
        }
    }
    return s;
}

std::string format_matrix(const RationalMatrix& m)
{
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += ';';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ',';
            s += to_string(m(i, j));
        }
    }
    return s;
}

RationalMatrix to_rational(const IntMatrix& m)
{
    RationalMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
    return q;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m)
{
    Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(m(i, j));
    return e;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m)
{
    Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
    return e;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows()) throw ValidationError("matrix shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = checked_add(c(i, j), checked_mul(a(i, k), b(k, j)));
        }
    return c;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows()) throw ValidationError("matrix shape mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntVector multiply(const IntMatrix& a, const IntVector& v)
{
    if (a.cols() != v.size()) throw ValidationError("matrix-vector shape mismatch");
    IntVector r(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] = checked_add(r[i], checked_mul(a(i, j), v[j]));
    return r;
}

RationalVector multiply(const RationalMatrix& a, const RationalVector& v)
{
    if (a.cols() != v.size()) throw ValidationError("matrix-vector shape mismatch");
    RationalVector r(a.rows(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

IntMatrix subtract(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = checked_add(a(i, j), -b(i, j));
    return c;
}

RationalMatrix subtract(const RationalMatrix& a, const RationalMatrix& b)
{
    RationalMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

IntMatrix companion(const IntPolynomial& p)
{
    if (p.leading() != 1) throw ValidationError("companion matrix needs a monic polynomial");
    const auto d = static_cast<std::size_t>(p.degree());
    if (d == 0) throw ValidationError("companion matrix needs degree >= 1");
    IntMatrix m(d, d);
    for (std::size_t i = 1; i < d; ++i) m(i, i - 1) = 1;
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = checked_mul(p[static_cast<int>(i)], -1);
    return m;
}

IntPolynomial char_poly(const IntMatrix& m)
{
    require_square(m.rows(), m.cols(), "char_poly");
    // Faddeev-LeVerrier; every division below is exact
    const std::size_t n = m.rows();
    BigMatrix a = to_big(m);
    std::vector<BigInt> c(n + 1);
    c[n] = 1;
    BigMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        BigMatrix next(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                BigInt s = 0;
                for (std::size_t t = 0; t < n; ++t) s += a(i, t) * mk(t, j);
                next(i, j) = s;
            }
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = next;
        BigInt tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t) tr += a(i, t) * mk(t, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    std::vector<std::int64_t> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = to_int64(c[i]);
    return IntPolynomial(std::move(out));
}

BigInt determinant(const IntMatrix& m)
{
    require_square(m.rows(), m.cols(), "determinant");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    BigMatrix a = to_big(m);
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix adjugate(const IntMatrix& m)
{
    require_square(m.rows(), m.cols(), "adjugate");
    const std::size_t n = m.rows();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            BigInt cof = determinant(minor);
            if ((i + j) % 2) cof = -cof;
            adj(j, i) = to_int64(cof);
        }
    return adj;
}

Rref rref(RationalMatrix m)
{
    Rref out;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.r = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b)
{
    if (b.size() != a.rows()) throw ValidationError("right-hand side length mismatch");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Rref rr = rref(std::move(aug));
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols()) return std::nullopt;
    if (rr.pivots.size() != a.cols()) return std::nullopt;
    RationalVector x(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) x[i] = rr.r(i, a.cols());
    return x;
}

std::vector<RationalVector> kernel(const RationalMatrix& m)
{
    Rref rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

RationalMatrix inverse_rational(const RationalMatrix& m)
{
    require_square(m.rows(), m.cols(), "inverse");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Rref rr = rref(std::move(aug));
    if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw ValidationError("singular matrix");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.r(i, n + j);
    return inv;
}

RationalMatrix inverse_rational(const IntMatrix& m) { return inverse_rational(to_rational(m)); }

double spectral_radius(const Eigen::MatrixXd& m)
{
    if (m.rows() == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    double r = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r = std::max(r, std::abs(es.eigenvalues()[i]));
    return r;
}

double spectral_radius(const IntMatrix& m) { return spectral_radius(to_eigen(m)); }
double spectral_radius(const RationalMatrix& m) { return spectral_radius(to_eigen(m)); }

RationalMatrix find_commuting_map(const IntMatrix& m, const IntVector& a, const RationalVector& b)
{
    require_square(m.rows(), m.cols(), "find_commuting_map");
    const std::size_t d = m.rows();
    if (a.size() != d || b.size() != d) throw ValidationError("vector dimension mismatch");
    // a must generate the whole space under M
    RationalMatrix krylov(d, d);
    IntVector v = a;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < d; ++i) krylov(i, k) = v[i];
        v = multiply(m, v);
    }
    if (rank(krylov) != d) throw ValidationError("vector lies in a proper invariant subspace of M");

    // unknown C(i,j) at index i*d+j; equations CM - MC = 0 and Ca = b
    RationalMatrix sys(d * d + d, d * d);
    RationalVector rhs(d * d + d, Rational(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t row = i * d + j;
            for (std::size_t k = 0; k < d; ++k) {
                sys(row, i * d + k) += m(k, j);
                sys(row, k * d + j) -= m(i, k);
            }
        }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) sys(d * d + i, i * d + j) = a[j];
        rhs[d * d + i] = b[i];
    }
    auto x = solve_unique(sys, rhs);
    if (!x) throw InternalError("commuting map system has no unique solution");
    RationalMatrix c(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) c(i, j) = (*x)[i * d + j];
    return c;
}

bool validate_digits(const IntMatrix& m, const std::vector<IntVector>& digits)
{
    require_square(m.rows(), m.cols(), "validate_digits");
    BigInt det = determinant(m);
    if (det == 0) throw ValidationError("singular dilation matrix");
    if (BigInt(digits.size()) != abs(det))
        throw ValidationError("digit count " + std::to_string(digits.size()) + " differs from |det M|");
    for (const auto& dg : digits)
        if (dg.size() != m.rows()) throw ValidationError("digit dimension mismatch");
    RationalMatrix inv = inverse_rational(m);
    for (std::size_t i = 0; i < digits.size(); ++i)
        for (std::size_t j = i + 1; j < digits.size(); ++j) {
            RationalVector diff(m.rows());
            for (std::size_t t = 0; t < m.rows(); ++t) diff[t] = Rational(digits[i][t]) - digits[j][t];
            RationalVector x = multiply(inv, diff);
            bool integral = true;
            for (const auto& q : x) integral = integral && is_integer(q);
            if (integral) return false;
        }
    return true;
}

}  // namespace twoattr
