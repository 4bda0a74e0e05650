#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twoattr/tiling.hpp"

namespace twoattr {

struct TransferMatrices {
    IntMatrix T0, T1;
    std::vector<IntVector> gamma;
    std::size_t zero_index = 0;
};

TransferMatrices transfer_matrices(const DigitSystem& sys);

// Minimal common invariant subspace of {T0, T1} containing the columns of T0 - T1,
// intersected with the zero coordinate-sum hyperplane.
struct SpecialSubspace {
    enum class Kind { ZeroSum, Exact, Floating };
    Kind kind = Kind::ZeroSum;
    std::size_t dim = 0;
    std::size_t zero_index = 0;   // ZeroSum: basis e_s - e_0, s != zero_index
    RationalMatrix basis;         // Exact: rows span the subspace
    Eigen::MatrixXd orthonormal;  // Floating: columns
    std::string name() const;
};

SpecialSubspace special_subspace(const IntMatrix& T0, const IntMatrix& T1, std::size_t zero_index);

// Matrices of T0, T1 restricted to the subspace (invariance is verified).
std::vector<Eigen::MatrixXd> restrict_pair(const IntMatrix& T0, const IntMatrix& T1, const SpecialSubspace& w);

// sqrt(rho(1/2 (B0 (x) B0 + B1 (x) B1))).
double l2_spectral_radius(const std::vector<Eigen::MatrixXd>& B);
// Same with an explicit basis (rows); throws ValidationError if it is not invariant.
double l2_spectral_radius(const IntMatrix& T0, const IntMatrix& T1, const RationalMatrix& basis);
// Dense Kronecker evaluation, for cross-checks on small inputs.
double l2_spectral_radius_dense(const std::vector<Eigen::MatrixXd>& B);

struct RegularityReport {
    std::string polynomial;
    double rho2 = 0;
    double alpha = 0;
    double lambda_max = 0;
    std::size_t subspace_dim = 0;
    std::size_t gamma_size = 0;
    std::string subspace;
    // sqrt of the spectral radius of (B0 + B1) / 2 on the same subspace
    double rho2_contact = 0;
    std::string to_json() const;
};

RegularityReport holder_exponent(const DigitSystem& sys);
RegularityReport holder_exponent(const IntPolynomial& p);
double surface_dimension(const IntPolynomial& p);

}  // namespace twoattr
