#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinpoint/cmatrix.hpp"

namespace spinpoint {

struct NormalityReport {
    double defect = 0.0;   ///< ||A A* - A* A||_F
    double henrici = 0.0;  ///< sqrt(||A||_F^2 - sum |lambda_i|^2), taken from the Schur factor
    bool is_normal = false;
    bool is_hermitian = false;
};

struct NilpotencyReport {
    bool is_nilpotent = false;
    std::optional<std::size_t> index;
    /// rank(A^k) for k = 1..index (or 1..n when not nilpotent).
    std::vector<std::size_t> rank_chain;
};

/// Relative radius (n u)^(1/n), u the unit roundoff, within which the
/// computed eigenvalues of an n x n single Jordan block scatter once the
/// entries carry rounding errors. Multiply by ||A||_F for an absolute radius.
double defective_spread(std::size_t n);

NormalityReport normality_report(const CMatrix& a, const Tolerance& tol = {});

/// Whether A + iB is normal for hermitian A, B. Decided from the normality
/// defect of A + iB and cross-checked against ||[A, B]||_F.
bool hermitian_pair_is_normal(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});

NilpotencyReport nilpotency_report(const CMatrix& a, const Tolerance& tol = {});

struct PhiFamily {
    double phi = 0.0;
    bool out_of_range = false;  ///< phi outside [0, pi/2]; formulas still apply
    CMatrix matrix;             ///< sigma3 + e^{i phi} sigma1
    std::array<Complex, 2> eigenvalues;        ///< +-sqrt(1 + e^{2 i phi}), principal branch
    std::array<CVector, 2> eigenvectors;       ///< (e^{i phi}, -1 + lambda)
    std::array<CVector, 2> unit_eigenvectors;  ///< the same, normalized
    double defect = 0.0;
    double henrici = 0.0;
};

PhiFamily phi_family(double phi);

/// Squared concurrence |2 (v1 v4 - v2 v3)|^2 of a normalized two-qubit state.
double two_qubit_tangle(std::span<const Complex> v);

}  // namespace spinpoint
