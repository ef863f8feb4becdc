#pragma once

#include "spinpoint/cmatrix.hpp"

namespace spinpoint::poly {

// Coefficient sequences are ordered from x^0 upwards.

Complex evaluate(std::span<const Complex> coeffs, Complex x);
CVector derivative(std::span<const Complex> coeffs);

/// Drops highest-degree coefficients whose modulus is below
/// `relative * max|coeff|`. An all-zero input yields an empty sequence.
CVector trim(std::span<const Complex> coeffs, double relative);

/// Roots as eigenvalues of the companion matrix of the monic normalization.
CVector roots(std::span<const Complex> coeffs);

/// Sylvester matrix of p (degree m) and q (degree k), size (m + k).
CMatrix sylvester(std::span<const Complex> p, std::span<const Complex> q);
Complex resultant(std::span<const Complex> p, std::span<const Complex> q);

}  // namespace spinpoint::poly
