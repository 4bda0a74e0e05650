#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twoattr/rational.hpp"

namespace twoattr {

// Integer polynomial, coefficients in ascending powers (c[0] is the free term).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<std::int64_t> coeffs);

    static IntPolynomial parse(std::string_view text);
    // z^n
    static IntPolynomial monomial(int n, std::int64_t c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }
    std::int64_t operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    std::int64_t leading() const { return c_.back(); }
    std::int64_t free_term() const { return c_.front(); }

    // "2,2,2,1"
    std::string str() const;
    // "z^3+2z^2+2z+2"
    std::string pretty() const;

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }
    // Shorter first, then lexicographic on ascending coefficients.
    bool operator<(const IntPolynomial& o) const;

private:
    std::vector<std::int64_t> c_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
// Exact division; throws ValidationError when b does not divide a.
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);
// q(z^k)
IntPolynomial substitute_power(const IntPolynomial& q, int k);

std::complex<double> evaluate(const IntPolynomial& p, std::complex<double> z);
BigInt evaluate(const IntPolynomial& p, const BigInt& z);

bool is_admissible(const IntPolynomial& p);
bool is_expanding(const IntPolynomial& p);

struct CertifiedRoot {
    std::complex<double> z;
    double radius = 0;  // the true root lies in the disc |w - z| <= radius
    bool multiple = false;
    double modulus_lo() const;
    double modulus_hi() const;
};

struct RootSpectrum {
    std::vector<CertifiedRoot> roots;
};

RootSpectrum certified_roots(const IntPolynomial& p);

struct MahlerMeasure {
    double value = 0;
    double lo = 0;
    double hi = 0;
    bool exact = false;
};

MahlerMeasure mahler_measure(const IntPolynomial& p);

IntPolynomial opposite(const IntPolynomial& p);
IntPolynomial class_key(const IntPolynomial& p);

bool is_isotropic(const IntPolynomial& p);
// Returns (q, k) with p(z) = q(z^k), q quadratic; nothing for odd degree.
std::optional<std::pair<IntPolynomial, int>> isotropic_quadratic_factor(const IntPolynomial& p);

}  // namespace twoattr
