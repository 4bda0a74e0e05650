#include "twoattr/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include "json.hpp"

namespace twoattr {

TransferMatrices transfer_matrices(const DigitSystem& sys)
{
    if (sys.digit_count() != 2) throw ValidationError("transfer matrices need a two-digit system");
    ContactGraph g = contact_set(sys);
    return TransferMatrices{g.T[0], g.T[1], g.gamma, g.zero_index};
}

std::string SpecialSubspace::name() const
{
    switch (kind) {
    case Kind::ZeroSum: return "zero-sum";
    case Kind::Exact: return "exact-closure";
    case Kind::Floating: return "floating-closure";
    }
    return "";
}

namespace {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e)
{
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t to_mod(std::int64_t x)
{
    std::int64_t r = x % static_cast<std::int64_t>(kPrime);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(kPrime) : r);
}

// Dimension of the closure computed modulo a prime; a lower bound on the rational dimension.
std::size_t closure_rank_mod(const IntMatrix& T0, const IntMatrix& T1)
{
    const std::size_t n = T0.rows();
    using Vec = std::vector<std::uint64_t>;
    std::vector<Vec> rows;
    std::vector<std::size_t> piv;
    std::deque<Vec> queue;
    for (std::size_t j = 0; j < n; ++j) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = to_mod(T0(i, j) - T1(i, j));
        queue.push_back(std::move(v));
    }
    const IntMatrix* ts[2] = {&T0, &T1};
    while (!queue.empty() && rows.size() < n) {
        Vec v = std::move(queue.front());
        queue.pop_front();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::uint64_t f = v[piv[r]];
            if (!f) continue;
            for (std::size_t i = 0; i < n; ++i) v[i] = (v[i] + kPrime - mulmod(f, rows[r][i])) % kPrime;
        }
        std::size_t p = 0;
        while (p < n && v[p] == 0) ++p;
        if (p == n) continue;
        std::uint64_t inv = powmod(v[p], kPrime - 2);
        for (auto& x : v) x = mulmod(x, inv);
        for (const IntMatrix* t : ts) {
            Vec w(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                unsigned __int128 s = 0;
                for (std::size_t k = 0; k < n; ++k)
                    if ((*t)(i, k)) s += static_cast<unsigned __int128>(to_mod((*t)(i, k))) * v[k];
                w[i] = static_cast<std::uint64_t>(s % kPrime);
            }
            queue.push_back(std::move(w));
        }
        rows.push_back(std::move(v));
        piv.push_back(p);
    }
    return rows.size();
}

bool unit_column_sums(const IntMatrix& t)
{
    for (std::size_t j = 0; j < t.cols(); ++j) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < t.rows(); ++i) s += t(i, j);
        if (s != 1) return false;
    }
    return true;
}

RationalMatrix exact_closure(const IntMatrix& T0, const IntMatrix& T1)
{
    const std::size_t n = T0.rows();
    std::vector<RationalVector> rows;
    std::vector<std::size_t> piv;
    std::deque<RationalVector> queue;
    for (std::size_t j = 0; j < n; ++j) {
        RationalVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = T0(i, j) - T1(i, j);
        queue.push_back(std::move(v));
    }
    const IntMatrix* ts[2] = {&T0, &T1};
    while (!queue.empty() && rows.size() < n) {
        RationalVector v = std::move(queue.front());
        queue.pop_front();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            Rational f = v[piv[r]];
            if (f == 0) continue;
            for (std::size_t i = 0; i < n; ++i) v[i] -= f * rows[r][i];
        }
        std::size_t p = 0;
        while (p < n && v[p] == 0) ++p;
        if (p == n) continue;
        Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (const IntMatrix* t : ts) {
            RationalVector w(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    if ((*t)(i, k)) w[i] += (*t)(i, k) * v[k];
            queue.push_back(std::move(w));
        }
        rows.push_back(std::move(v));
        piv.push_back(p);
    }
    RationalMatrix b(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t i = 0; i < n; ++i) b(r, i) = rows[r][i];
    return b;
}

// Rows of b combined so that every coordinate sums to zero.
RationalMatrix intersect_zero_sum(const RationalMatrix& b)
{
    if (b.rows() == 0) return b;
    RationalMatrix sums(1, b.rows());
    for (std::size_t r = 0; r < b.rows(); ++r) {
        Rational s = 0;
        for (std::size_t i = 0; i < b.cols(); ++i) s += b(r, i);
        sums(0, r) = s;
    }
    auto ker = kernel(sums);
    RationalMatrix out(ker.size(), b.cols());
    for (std::size_t k = 0; k < ker.size(); ++k)
        for (std::size_t r = 0; r < b.rows(); ++r)
            if (ker[k][r] != 0)
                for (std::size_t i = 0; i < b.cols(); ++i) out(k, i) += ker[k][r] * b(r, i);
    return out;
}

Eigen::MatrixXd floating_closure(const IntMatrix& T0, const IntMatrix& T1, bool project_zero_sum)
{
    const Eigen::Index n = static_cast<Eigen::Index>(T0.rows());
    const Eigen::MatrixXd t0 = to_eigen(T0), t1 = to_eigen(T1);
    std::vector<Eigen::VectorXd> q;
    std::deque<Eigen::VectorXd> queue;
    for (Eigen::Index j = 0; j < n; ++j) queue.push_back(t0.col(j) - t1.col(j));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    while (!queue.empty() && static_cast<Eigen::Index>(q.size()) < n) {
        Eigen::VectorXd v = queue.front();
        queue.pop_front();
        const double scale = v.norm();
        if (scale == 0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            if (project_zero_sum) v -= ones * ones.dot(v);
            for (const auto& u : q) v -= u * u.dot(v);
        }
        if (v.norm() <= 1e-9 * scale) continue;
        v.normalize();
        queue.push_back(t0 * v);
        queue.push_back(t1 * v);
        q.push_back(v);
    }
    Eigen::MatrixXd out(n, static_cast<Eigen::Index>(q.size()));
    for (std::size_t k = 0; k < q.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = q[k];
    return out;
}

std::vector<Eigen::MatrixXd> restrict_exact(const IntMatrix& T0, const IntMatrix& T1, const RationalMatrix& basis)
{
    Rref rr = rref(basis);
    const std::size_t r = rr.pivots.size();
    const std::size_t n = basis.cols();
    std::vector<Eigen::MatrixXd> out;
    for (const IntMatrix* t : {&T0, &T1}) {
        Eigen::MatrixXd b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        for (std::size_t j = 0; j < r; ++j) {
            RationalVector tw(n, Rational(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    if ((*t)(i, k) && rr.r(j, k) != 0) tw[i] += (*t)(i, k) * rr.r(j, k);
            // coordinates are the pivot entries of the reduced basis
            RationalVector check(n, Rational(0));
            for (std::size_t i = 0; i < r; ++i) {
                const Rational& c = tw[rr.pivots[i]];
                b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(c);
                if (c != 0)
                    for (std::size_t k = 0; k < n; ++k) check[k] += c * rr.r(i, k);
            }
            if (check != tw) throw ValidationError("subspace is not invariant under the transfer matrices");
        }
        out.push_back(std::move(b));
    }
    return out;
}

// Dominant eigenvalue modulus of X -> 1/2 sum B X B^T by restarted Arnoldi from X = I.
double lifted_radius_arnoldi(const std::vector<Eigen::MatrixXd>& B)
{
    const Eigen::Index r = B[0].rows();
    const Eigen::Index n = r * r;
    // restricted transfer matrices are sparse apart from a few rows
    std::vector<Eigen::SparseMatrix<double>> S;
    for (const auto& b : B) S.push_back(b.sparseView());
    auto apply = [&](const Eigen::VectorXd& x) {
        Eigen::Map<const Eigen::MatrixXd> X(x.data(), r, r);
        Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(r, r);
        for (const auto& b : S) {
            const Eigen::MatrixXd XBt = X * b.transpose();
            Y.noalias() += b * XBt;
        }
        Y *= 0.5;
        return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(Y.data(), n));
    };
    // keep the Krylov basis within about 1.5 GB
    const Eigen::Index fit = static_cast<Eigen::Index>(1.5e9 / (8.0 * static_cast<double>(n))) - 1;
    const Eigen::Index k = std::min<Eigen::Index>(n, std::clamp<Eigen::Index>(fit, 4, 40));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(r, r);
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(id.data(), n);
    x.normalize();
    double theta = 0;
    for (int restart = 0; restart < 500; ++restart) {
        Eigen::MatrixXd V(n, k + 1);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k + 1, k);
        V.col(0) = x;
        Eigen::Index m = k;
        for (Eigen::Index j = 0; j < k; ++j) {
            Eigen::VectorXd w = apply(V.col(j));
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index i = 0; i <= j; ++i) {
                    double h = V.col(i).dot(w);
                    H(i, j) += h;
                    w -= h * V.col(i);
                }
            H(j + 1, j) = w.norm();
            if (H(j + 1, j) < 1e-14) {
                m = j + 1;
                break;
            }
            V.col(j + 1) = w / H(j + 1, j);
        }
        Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(m, m), true);
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < m; ++i) {
            const auto& ev = es.eigenvalues();
            if (std::abs(ev(i)) > std::abs(ev(best)) + 1e-14 ||
                (std::abs(std::abs(ev(i)) - std::abs(ev(best))) <= 1e-14 && ev(i).real() > ev(best).real()))
                best = i;
        }
        theta = std::abs(es.eigenvalues()(best));
        Eigen::VectorXcd y = es.eigenvectors().col(best);
        y /= y.norm();
        const double resid = m < k ? 0.0 : H(m, m - 1) * std::abs(y(m - 1));
        Eigen::VectorXd next = V.leftCols(m) * y.real();
        if (next.norm() < 1e-300) next = V.leftCols(m) * y.imag();
        x = next.normalized();
        if (theta == 0 || resid <= 1e-12 * theta) return theta;
    }
    // fall back on the residual of the last Ritz pair
    Eigen::VectorXd lx = apply(x);
    double rq = x.dot(lx);
    if ((lx - rq * x).norm() > 1e-8 * std::max(std::abs(rq), 1e-300))
        throw InternalError("Arnoldi iteration for the L2 spectral radius did not converge");
    return std::abs(rq);
}

}  // namespace

SpecialSubspace special_subspace(const IntMatrix& T0, const IntMatrix& T1, std::size_t zero_index)
{
    const std::size_t n = T0.rows();
    SpecialSubspace w;
    w.zero_index = zero_index;
    const bool zero_sum_invariant = unit_column_sums(T0) && unit_column_sums(T1);
    // the closure lies in the zero-sum hyperplane; a full modular rank proves equality
    if (zero_sum_invariant && n >= 1 && closure_rank_mod(T0, T1) == n - 1) {
        w.kind = SpecialSubspace::Kind::ZeroSum;
        w.dim = n - 1;
        return w;
    }
    if (n * n <= 2500) {
        w.kind = SpecialSubspace::Kind::Exact;
        RationalMatrix c = exact_closure(T0, T1);
        w.basis = intersect_zero_sum(c);
        w.dim = rank(w.basis);
        return w;
    }
    w.kind = SpecialSubspace::Kind::Floating;
    w.orthonormal = floating_closure(T0, T1, true);
    w.dim = static_cast<std::size_t>(w.orthonormal.cols());
    return w;
}

std::vector<Eigen::MatrixXd> restrict_pair(const IntMatrix& T0, const IntMatrix& T1, const SpecialSubspace& w)
{
    switch (w.kind) {
    case SpecialSubspace::Kind::ZeroSum: {
        if (!unit_column_sums(T0) || !unit_column_sums(T1))
            throw ValidationError("zero-sum hyperplane is not invariant under the transfer matrices");
        const std::size_t n = T0.rows(), z = w.zero_index;
        std::vector<std::size_t> idx;
        for (std::size_t s = 0; s < n; ++s)
            if (s != z) idx.push_back(s);
        std::vector<Eigen::MatrixXd> out;
        for (const IntMatrix* t : {&T0, &T1}) {
            // T(e_sj - e_0) read off at coordinates s_i != 0
            Eigen::MatrixXd b(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = 0; j < idx.size(); ++j)
                    b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        static_cast<double>((*t)(idx[i], idx[j]) - (*t)(idx[i], z));
            out.push_back(std::move(b));
        }
        return out;
    }
    case SpecialSubspace::Kind::Exact: return restrict_exact(T0, T1, w.basis);
    case SpecialSubspace::Kind::Floating: {
        std::vector<Eigen::MatrixXd> out;
        const Eigen::MatrixXd& q = w.orthonormal;
        for (const IntMatrix* t : {&T0, &T1}) {
            Eigen::MatrixXd tq = to_eigen(*t) * q;
            Eigen::MatrixXd b = q.transpose() * tq;
            if ((tq - q * b).norm() > 1e-8 * std::max(1.0, tq.norm()))
                throw InternalError("floating closure is not invariant within tolerance");
            out.push_back(std::move(b));
        }
        return out;
    }
    }
    return {};
}

double l2_spectral_radius_dense(const std::vector<Eigen::MatrixXd>& B)
{
    if (B.empty() || B[0].rows() == 0) return 0.0;
    const Eigen::Index r = B[0].rows();
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(r * r, r * r);
    for (const auto& b : B)
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < r; ++j)
                if (b(i, j) != 0) K.block(i * r, j * r, r, r) += b(i, j) * b;
    K *= 0.5;
    return std::sqrt(spectral_radius(K));
}

double l2_spectral_radius(const std::vector<Eigen::MatrixXd>& B)
{
    if (B.empty() || B[0].rows() == 0) return 0.0;
    if (B[0].rows() <= 20) return l2_spectral_radius_dense(B);
    return std::sqrt(lifted_radius_arnoldi(B));
}

double l2_spectral_radius(const IntMatrix& T0, const IntMatrix& T1, const RationalMatrix& basis)
{
    if (basis.rows() == 0 || rank(basis) == 0) return 0.0;
    return l2_spectral_radius(restrict_exact(T0, T1, basis));
}

std::string RegularityReport::to_json() const
{
    nlohmann::json j;
    if (!polynomial.empty()) j["polynomial"] = polynomial;
    j["gamma_size"] = gamma_size;
    j["subspace"] = subspace;
    j["subspace_dim"] = subspace_dim;
    j["rho2"] = rho2;
    j["alpha"] = alpha;
    j["lambda_max"] = lambda_max;
    j["rho2_contact"] = rho2_contact;
    return j.dump();
}

RegularityReport holder_exponent(const DigitSystem& sys)
{
    TransferMatrices tm = transfer_matrices(sys);
    SpecialSubspace w = special_subspace(tm.T0, tm.T1, tm.zero_index);
    std::vector<Eigen::MatrixXd> B = restrict_pair(tm.T0, tm.T1, w);
    RegularityReport rep;
    rep.gamma_size = tm.gamma.size();
    rep.subspace = w.name();
    rep.subspace_dim = w.dim;
    rep.rho2 = l2_spectral_radius(B);
    rep.rho2_contact = w.dim ? std::sqrt(spectral_radius(Eigen::MatrixXd(0.5 * (B[0] + B[1])))) : 0.0;
    rep.lambda_max = spectral_radius(sys.M);
    rep.alpha = -std::log(rep.rho2) / std::log(rep.lambda_max);
    return rep;
}

RegularityReport holder_exponent(const IntPolynomial& p)
{
    if (!is_admissible(p) || !is_expanding(p)) throw ValidationError(p.str() + " is not an admissible expanding polynomial");
    RegularityReport rep = holder_exponent(DigitSystem::standard(p));
    rep.polynomial = p.str();
    return rep;
}

double surface_dimension(const IntPolynomial& p)
{
    if (!is_isotropic(p)) throw ValidationError("surface dimension is only defined here for isotropic polynomials");
    return holder_exponent(p).alpha;
}

}  // namespace twoattr
