#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "spinpoint/error.hpp"

namespace spinpoint {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

/// Dense complex matrix stored row-major. Every stored entry is finite;
/// constructors and arithmetic reject NaN/Inf with NonFiniteError.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix zero(std::size_t n) { return CMatrix(n, n); }
    static CMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }
    CVector column(std::size_t c) const;
    Complex trace() const;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Numerical zero threshold: `absolute + relative * n * ||A||_F`.
struct Tolerance {
    double absolute = 1e-12;
    double relative = 1e-12;

    double threshold(const CMatrix& a) const;
};

/// A = U T U* with U unitary and T upper triangular.
struct SchurForm {
    CMatrix u;
    CMatrix t;
    double residual = 0.0;
};

// Arithmetic. All results are fresh values; dimension mismatches throw.
CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix sub(const CMatrix& a, const CMatrix& b);
CMatrix mul(const CMatrix& a, const CMatrix& b);
CVector mul(const CMatrix& a, std::span<const Complex> v);
CMatrix scale(Complex c, const CMatrix& a);
CMatrix adjoint(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) { return add(a, b); }
inline CMatrix operator-(const CMatrix& a, const CMatrix& b) { return sub(a, b); }
inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mul(a, b); }
inline CMatrix operator*(Complex c, const CMatrix& a) { return scale(c, a); }
inline CMatrix operator-(const CMatrix& a) { return scale(-1.0, a); }

double frobenius_norm(const CMatrix& a);
double vector_norm(std::span<const Complex> v);
/// Largest entry modulus of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool is_hermitian(const CMatrix& a, double tol = 0.0);

/// Numerical rank by Gaussian elimination with full pivoting. Pivots at or
/// below `tol.threshold(a)` count as zero.
std::size_t rank(const CMatrix& a, const Tolerance& tol = {});

/// Orthonormal basis of the numerical null space, one vector per column of
/// the result (n x 0 when the matrix has full column rank). Obtained from the
/// reduced row echelon form of the full-pivot elimination.
CMatrix null_space(const CMatrix& a, const Tolerance& tol = {});

/// Determinant by LU with partial pivoting.
Complex determinant(const CMatrix& a);

/// Eigenvalues with multiplicity, sorted by descending modulus, then
/// descending real part, then descending imaginary part.
CVector eigenvalues(const CMatrix& a);
SchurForm schur(const CMatrix& a);
void sort_eigenvalues(CVector& values);

CMatrix matrix_exp(const CMatrix& a);
CMatrix matrix_power(const CMatrix& a, unsigned k);

/// Coefficients of det(A - E I) from E^0 up to E^n (Faddeev-LeVerrier).
CVector char_poly(const CMatrix& a);

}  // namespace spinpoint
