#include "spinpoint/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spinpoint {

namespace {

void require_finite(std::span<const Complex> data, const char* where) {
    for (const auto& z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw NonFiniteError(std::string(where) + ": non-finite entry");
        }
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(where) + ": shapes " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()) + " differ");
    }
}

void require_square(const CMatrix& a, const char* where) {
    if (!a.is_square() || a.empty()) {
        throw DimensionError(std::string(where) + ": square matrix required");
    }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("CMatrix: " + std::to_string(data_.size()) + " entries for " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    require_finite(data_, "CMatrix");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_, "CMatrix");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    require_finite(m.data(), "CMatrix::diagonal");
    return m;
}

CVector CMatrix::column(std::size_t c) const {
    CVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Complex CMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double Tolerance::threshold(const CMatrix& a) const {
    const auto n = static_cast<double>(std::max(a.rows(), a.cols()));
    return absolute + relative * n * frobenius_norm(a);
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "add");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) + b(r, c);
    require_finite(out.data(), "add");
    return out;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "sub");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
    require_finite(out.data(), "sub");
    return out;
}

CMatrix mul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mul: inner dimensions " + std::to_string(a.cols()) + " and " +
                             std::to_string(b.rows()) + " differ");
    }
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
        }
    }
    require_finite(out.data(), "mul");
    return out;
}

CVector mul(const CMatrix& a, std::span<const Complex> v) {
    if (a.cols() != v.size()) throw DimensionError("mul: vector length mismatch");
    CVector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * v[c];
        out[r] = acc;
    }
    require_finite(out, "mul");
    return out;
}

CMatrix scale(Complex c, const CMatrix& a) {
    CMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) out(r, k) = c * a(r, k);
    require_finite(out.data(), "scale");
    return out;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

CMatrix transpose(const CMatrix& a) {
    CMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
    return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_square(a, "commutator");
    require_same_shape(a, b, "commutator");
    return sub(mul(a, b), mul(b, a));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    require_finite(out.data(), "kron");
    return out;
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
    return out;
}

double frobenius_norm(const CMatrix& a) { return vector_norm(a.data()); }

double vector_norm(std::span<const Complex> v) {
    // Scaled accumulation so that entries near the overflow limit still work.
    double scale = 0.0;
    for (const auto& z : v) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& z : v) {
        const double re = z.real() / scale;
        const double im = z.imag() / scale;
        sum += re * re + im * im;
    }
    return scale * std::sqrt(sum);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_hermitian(const CMatrix& a, double tol) {
    if (!a.is_square()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = r; c < a.cols(); ++c)
            if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
    return true;
}

namespace {

// Full-pivot Gaussian elimination to reduced row echelon form. Returns the
// pivot columns in order; `m` is overwritten with the RREF (columns permuted
// back to their original positions).
std::vector<std::size_t> full_pivot_rref(CMatrix& m, double threshold) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> colperm(cols);
    std::iota(colperm.begin(), colperm.end(), 0);
    std::vector<std::size_t> pivots;

    for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
        std::size_t pr = step, pc = step;
        double best = -1.0;
        for (std::size_t r = step; r < rows; ++r) {
            for (std::size_t c = step; c < cols; ++c) {
                const double v = std::abs(m(r, colperm[c]));
                if (v > best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (best <= threshold) break;
        std::swap(colperm[step], colperm[pc]);
        if (pr != step)
            for (std::size_t c = 0; c < cols; ++c) std::swap(m(step, c), m(pr, c));

        const std::size_t col = colperm[step];
        const Complex piv = m(step, col);
        for (std::size_t c = 0; c < cols; ++c) m(step, c) /= piv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == step) continue;
            const Complex f = m(r, col);
            if (f == Complex{}) continue;
            for (std::size_t c = 0; c < cols; ++c) m(r, c) -= f * m(step, c);
            m(r, col) = 0.0;
        }
        pivots.push_back(col);
    }
    return pivots;
}

}  // namespace

std::size_t rank(const CMatrix& a, const Tolerance& tol) {
    if (a.empty()) return 0;
    CMatrix work = a;
    return full_pivot_rref(work, tol.threshold(a)).size();
}

CMatrix null_space(const CMatrix& a, const Tolerance& tol) {
    const std::size_t cols = a.cols();
    CMatrix work = a;
    const auto pivots = full_pivot_rref(work, tol.threshold(a));

    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;

    // One raw null vector per free column: x_free = 1, x_pivot = -rref(row, free).
    std::vector<CVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        CVector v(cols);
        v[free] = 1.0;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -work(k, free);
        basis.push_back(std::move(v));
    }

    // Modified Gram-Schmidt (twice) for an orthonormal basis.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                Complex dot{};
                for (std::size_t k = 0; k < cols; ++k) dot += std::conj(basis[j][k]) * basis[i][k];
                for (std::size_t k = 0; k < cols; ++k) basis[i][k] -= dot * basis[j][k];
            }
        }
        const double nrm = vector_norm(basis[i]);
        for (auto& z : basis[i]) z /= nrm;
    }

    CMatrix out(cols, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t k = 0; k < cols; ++k) out(k, j) = basis[j][k];
    return out;
}

Complex determinant(const CMatrix& a) {
    require_square(a, "determinant");
    const std::size_t n = a.rows();
    CMatrix lu = a;
    Complex det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > std::abs(lu(p, k))) p = r;
        if (lu(p, k) == Complex{}) return 0.0;
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(p, c));
            det = -det;
        }
        const Complex piv = lu(k, k);
        det *= piv;
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = lu(r, k) / piv;
            if (f == Complex{}) continue;
            for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
        }
    }
    return det;
}

void sort_eigenvalues(CVector& values) {
    std::sort(values.begin(), values.end(), [](const Complex& x, const Complex& y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay) return ax > ay;
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
}

CVector eigenvalues(const CMatrix& a) {
    const SchurForm f = schur(a);
    CVector values(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) values[i] = f.t(i, i);
    sort_eigenvalues(values);
    return values;
}

CMatrix matrix_power(const CMatrix& a, unsigned k) {
    require_square(a, "matrix_power");
    CMatrix result = CMatrix::identity(a.rows());
    CMatrix base = a;
    bool first = true;
    while (k > 0) {
        if (k & 1u) {
            result = first ? base : mul(result, base);
            first = false;
        }
        k >>= 1u;
        if (k > 0) base = mul(base, base);
    }
    return result;
}

CMatrix matrix_exp(const CMatrix& a) {
    require_square(a, "matrix_exp");
    const std::size_t n = a.rows();
    const double nrm = frobenius_norm(a);

    // Scale so that ||A / 2^s||_F <= 1/2, then degree-13 Taylor via Horner.
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    const CMatrix scaled = scale(std::ldexp(1.0, -squarings), a);

    constexpr int kDegree = 13;
    const CMatrix id = CMatrix::identity(n);
    CMatrix series = id;
    for (int k = kDegree; k >= 1; --k) {
        series = add(id, scale(1.0 / k, mul(scaled, series)));
    }
    for (int s = 0; s < squarings; ++s) series = mul(series, series);
    return series;
}

CVector char_poly(const CMatrix& a) {
    require_square(a, "char_poly");
    const std::size_t n = a.rows();
    // c holds det(E I - A) with c[n] = 1; M_k = A M_{k-1} + c_{n-k+1} I.
    CVector c(n + 1);
    c[n] = 1.0;
    CMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        CMatrix next = mul(a, m);
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        m = std::move(next);
        c[n - k] = -mul(a, m).trace() / static_cast<double>(k);
    }
    if (n % 2 == 1)
        for (auto& z : c) z = -z;
    return c;
}

}  // namespace spinpoint
