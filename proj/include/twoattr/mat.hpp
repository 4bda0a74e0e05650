#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "twoattr/intpoly.hpp"
#include "twoattr/rational.hpp"

namespace twoattr {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : r_(rows), c_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<T>& data() const { return a_; }

    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<std::int64_t>;
using RationalMatrix = Matrix<Rational>;

IntMatrix parse_matrix(std::string_view text);
std::string format_matrix(const IntMatrix& m);
std::string format_matrix(const RationalMatrix& m);

RationalMatrix to_rational(const IntMatrix& m);
Eigen::MatrixXd to_eigen(const IntMatrix& m);
Eigen::MatrixXd to_eigen(const RationalMatrix& m);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
IntVector multiply(const IntMatrix& a, const IntVector& v);
RationalVector multiply(const RationalMatrix& a, const RationalVector& v);
IntMatrix subtract(const IntMatrix& a, const IntMatrix& b);
RationalMatrix subtract(const RationalMatrix& a, const RationalMatrix& b);

IntMatrix companion(const IntPolynomial& p);
IntPolynomial char_poly(const IntMatrix& m);
BigInt determinant(const IntMatrix& m);
IntMatrix adjugate(const IntMatrix& m);

RationalMatrix inverse_rational(const IntMatrix& m);
RationalMatrix inverse_rational(const RationalMatrix& m);

double spectral_radius(const Eigen::MatrixXd& m);
double spectral_radius(const IntMatrix& m);
double spectral_radius(const RationalMatrix& m);

RationalMatrix find_commuting_map(const IntMatrix& m, const IntVector& a, const RationalVector& b);
bool validate_digits(const IntMatrix& m, const std::vector<IntVector>& digits);

// Reduced row echelon form over Q.
struct Rref {
    RationalMatrix r;
    std::vector<std::size_t> pivots;
};
Rref rref(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
// Unique solution of a x = b, nothing if inconsistent or underdetermined.
std::optional<RationalVector> solve_unique(const RationalMatrix& a, const RationalVector& b);
std::vector<RationalVector> kernel(const RationalMatrix& m);

}  // namespace twoattr
