// Complex Schur form: Householder reduction to upper Hessenberg form followed
// by single-shift implicit QR sweeps with deflation, in the style of LAPACK's
// ZLAHQR.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinpoint/cmatrix.hpp"

namespace spinpoint {

namespace {

constexpr int kSweepsPerRow = 40;

struct Givens {
    double c = 1.0;
    Complex s{};
};

// Rotation G = [c s; -conj(s) c] with G [a; b] = [r; 0].
Givens make_givens(Complex a, Complex b) {
    if (b == Complex{}) return {1.0, 0.0};
    if (a == Complex{}) return {0.0, std::conj(b) / std::abs(b)};
    const double na = std::abs(a);
    const double norm = std::hypot(na, std::abs(b));
    const Complex alpha = a / na;
    return {na / norm, alpha * std::conj(b) / norm};
}

// Rows k, k+1 of h, columns [c0, c1).
void rotate_rows(CMatrix& h, const Givens& g, std::size_t k, std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
        const Complex x = h(k, c);
        const Complex y = h(k + 1, c);
        h(k, c) = g.c * x + g.s * y;
        h(k + 1, c) = -std::conj(g.s) * x + g.c * y;
    }
}

// Columns k, k+1 of h times G*, rows [r0, r1).
void rotate_cols(CMatrix& h, const Givens& g, std::size_t k, std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
        const Complex x = h(r, k);
        const Complex y = h(r, k + 1);
        h(r, k) = g.c * x + std::conj(g.s) * y;
        h(r, k + 1) = -g.s * x + g.c * y;
    }
}

// In-place reduction A -> Q* A Q = H (upper Hessenberg); returns Q.
CMatrix hessenberg(CMatrix& a) {
    const std::size_t n = a.rows();
    CMatrix q = CMatrix::identity(n);
    CVector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm = std::hypot(xnorm, std::abs(a(i, k)));
        if (xnorm == 0.0) continue;

        const Complex x0 = a(k + 1, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;

        std::fill(v.begin(), v.end(), Complex{});
        for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
        v[k + 1] -= alpha;
        double vnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm = std::hypot(vnorm, std::abs(v[i]));
        if (vnorm == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

        // A <- (I - 2 v v*) A
        for (std::size_t c = 0; c < n; ++c) {
            Complex dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, c);
            for (std::size_t i = k + 1; i < n; ++i) a(i, c) -= 2.0 * v[i] * dot;
        }
        // A <- A (I - 2 v v*), Q <- Q (I - 2 v v*)
        for (CMatrix* m : {&a, &q}) {
            for (std::size_t r = 0; r < n; ++r) {
                Complex dot{};
                for (std::size_t i = k + 1; i < n; ++i) dot += (*m)(r, i) * v[i];
                for (std::size_t i = k + 1; i < n; ++i) (*m)(r, i) -= 2.0 * dot * std::conj(v[i]);
            }
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
    return q;
}

Complex wilkinson_shift(const CMatrix& h, std::size_t i) {
    const Complex a = h(i - 1, i - 1);
    const Complex b = h(i - 1, i);
    const Complex c = h(i, i - 1);
    const Complex d = h(i, i);
    const Complex half = 0.5 * (a - d);
    const Complex root = std::sqrt(half * half + b * c);
    const Complex plus = half + root;
    const Complex minus = half - root;
    // Eigenvalue of the trailing 2x2 closest to d.
    if (std::abs(plus) >= std::abs(minus)) return plus == Complex{} ? d : d - b * c / plus;
    return d - b * c / minus;
}

// True when h(k, k-1) is negligible (ZLAHQR criterion incl. Ahues-Tisseur).
bool negligible_subdiagonal(const CMatrix& h, std::size_t k, std::size_t lo, std::size_t hi,
                            double ulp, double smlnum) {
    const double sub = std::abs(h(k, k - 1));
    if (sub <= smlnum) return true;
    double tst = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
    if (tst == 0.0) {
        if (k >= lo + 2) tst += std::abs(h(k - 1, k - 2));
        if (k + 1 <= hi) tst += std::abs(h(k + 1, k));
    }
    if (sub > ulp * tst) return false;
    const double ab = std::max(sub, std::abs(h(k - 1, k)));
    const double ba = std::min(sub, std::abs(h(k - 1, k)));
    const double diff = std::abs(h(k - 1, k - 1) - h(k, k));
    const double aa = std::max(std::abs(h(k, k)), diff);
    const double bb = std::min(std::abs(h(k, k)), diff);
    const double s = aa + ab;
    return ba * (ab / s) <= std::max(smlnum, ulp * (bb * (aa / s)));
}

}  // namespace

SchurForm schur(const CMatrix& a) {
    if (!a.is_square() || a.empty()) throw DimensionError("schur: square matrix required");
    const std::size_t n = a.rows();

    CMatrix h = a;
    CMatrix z = hessenberg(h);

    const double ulp = std::numeric_limits<double>::epsilon();
    const double smlnum = std::numeric_limits<double>::min() * (static_cast<double>(n) / ulp);
    int sweeps_left = kSweepsPerRow * static_cast<int>(n);

    // Active window is [lo, hi]; hi walks down as eigenvalues deflate.
    std::size_t hi = n - 1;
    while (true) {
        int its = 0;
        std::size_t lo = 0;
        while (true) {
            std::size_t k = hi;
            for (; k > 0; --k)
                if (negligible_subdiagonal(h, k, 0, hi, ulp, smlnum)) break;
            lo = k;
            if (lo > 0) h(lo, lo - 1) = 0.0;
            if (lo >= hi) break;

            if (sweeps_left-- <= 0) {
                throw ConvergenceError(hi, "schur: QR iteration did not converge at row " +
                                               std::to_string(hi));
            }
            ++its;

            Complex shift;
            if (its % 30 == 10) {
                shift = h(lo, lo) + 0.75 * std::abs(h(lo + 1, lo).real());
            } else if (its % 30 == 20) {
                shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real());
            } else {
                shift = wilkinson_shift(h, hi);
            }

            // Implicit single-shift bulge chase over the window.
            for (std::size_t k2 = lo; k2 < hi; ++k2) {
                const Complex x = k2 == lo ? h(lo, lo) - shift : h(k2, k2 - 1);
                const Complex y = k2 == lo ? h(lo + 1, lo) : h(k2 + 1, k2 - 1);
                const Givens g = make_givens(x, y);
                rotate_rows(h, g, k2, k2 == lo ? lo : k2 - 1, n);
                rotate_cols(h, g, k2, 0, std::min(k2 + 3, hi + 1));
                rotate_cols(z, g, k2, 0, n);
                if (k2 > lo) h(k2 + 1, k2 - 1) = 0.0;
            }
        }
        if (lo == 0) break;
        hi = lo - 1;
    }

    for (std::size_t r = 1; r < n; ++r)
        for (std::size_t c = 0; c < r; ++c) h(r, c) = 0.0;

    SchurForm form{z, h, 0.0};
    form.residual = frobenius_norm(sub(a, mul(mul(z, h), adjoint(z))));
    return form;
}

}  // namespace spinpoint
