#include "spinpoint/nonnormal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spinpoint {

namespace {

CMatrix pauli1() { return {{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix pauli3() { return {{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace

double defective_spread(std::size_t n) {
    const double u = 0.5 * std::numeric_limits<double>::epsilon();
    const auto nd = static_cast<double>(n);
    return std::pow(nd * u, 1.0 / nd);
}

NormalityReport normality_report(const CMatrix& a, const Tolerance& tol) {
    if (!a.is_square() || a.empty()) throw DimensionError("normality_report: square matrix required");
    NormalityReport r;
    const CMatrix ah = adjoint(a);
    const CMatrix left = mul(a, ah);
    r.defect = frobenius_norm(sub(left, mul(ah, a)));
    r.is_normal = r.defect <= tol.threshold(left);
    r.is_hermitian = frobenius_norm(sub(a, ah)) <= tol.threshold(a);

    // ||A||^2 - sum |lambda|^2 is exactly the squared strict upper part of T;
    // reading it off T avoids cancellation for nearly normal A.
    const CMatrix t = schur(a).t;
    double off = 0.0;
    for (std::size_t c = 1; c < t.cols(); ++c)
        for (std::size_t r0 = 0; r0 < c; ++r0) off += std::norm(t(r0, c));
    r.henrici = std::sqrt(off);
    return r;
}

bool hermitian_pair_is_normal(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("hermitian_pair_is_normal: matrices must be square and equally sized");
    }
    if (!is_hermitian(a, tol.threshold(a)) || !is_hermitian(b, tol.threshold(b))) {
        throw InvalidArgument("not-hermitian", "hermitian_pair_is_normal: inputs must be hermitian");
    }
    const auto n = static_cast<double>(a.rows());
    const double threshold = tol.absolute + tol.relative * n * frobenius_norm(a) * frobenius_norm(b);

    // (A + iB)(A + iB)* - (A + iB)*(A + iB) = -2i [A, B].
    const CMatrix c = add(a, scale(kI, b));
    const CMatrix ch = adjoint(c);
    const double defect = frobenius_norm(sub(mul(c, ch), mul(ch, c)));
    const bool by_defect = defect <= 2.0 * threshold;
    const bool by_commutator = frobenius_norm(commutator(a, b)) <= threshold;
    if (by_defect != by_commutator) {
        throw Error("cross-check-failed",
                    "hermitian_pair_is_normal: normality defect and commutator disagree", true);
    }
    return by_commutator;
}

NilpotencyReport nilpotency_report(const CMatrix& a, const Tolerance& tol) {
    if (!a.is_square() || a.empty()) throw DimensionError("nilpotency_report: square matrix required");
    const std::size_t n = a.rows();
    const double nrm = frobenius_norm(a);
    NilpotencyReport r;

    const double eig_bound = std::max(1e-6 * (1.0 + nrm), defective_spread(n) * nrm);
    const auto values = eigenvalues(a);
    const bool spectrum_zero =
        std::all_of(values.begin(), values.end(), [&](Complex z) { return std::abs(z) <= eig_bound; });

    // A^k counts as zero when it is below the roundoff level of the product
    // A * A^{k-1} that produced it.
    const double rel = tol.relative * static_cast<double>(n);
    CMatrix power = a;
    double prev_norm = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) power = mul(power, a);
        const double floor = tol.absolute + rel * nrm * prev_norm;
        const double pn = frobenius_norm(power);
        if (pn <= floor) {
            r.rank_chain.push_back(0);
            r.index = k;
            break;
        }
        r.rank_chain.push_back(rank(power, Tolerance{floor, tol.relative}));
        prev_norm = pn;
    }
    r.is_nilpotent = spectrum_zero && r.index.has_value();
    if (!r.is_nilpotent) r.index.reset();
    return r;
}

PhiFamily phi_family(double phi) {
    PhiFamily f;
    f.phi = phi;
    f.out_of_range = !(phi >= 0.0 && phi <= std::numbers::pi / 2);
    const Complex e = std::polar(1.0, phi);
    f.matrix = add(pauli3(), scale(e, pauli1()));

    const Complex lam = std::sqrt(1.0 + e * e);
    f.eigenvalues = {lam, -lam};
    for (std::size_t k = 0; k < 2; ++k) {
        f.eigenvectors[k] = {e, -1.0 + f.eigenvalues[k]};
        const double nv = vector_norm(f.eigenvectors[k]);
        f.unit_eigenvectors[k] = {f.eigenvectors[k][0] / nv, f.eigenvectors[k][1] / nv};
    }
    const auto report = normality_report(f.matrix);
    f.defect = report.defect;
    f.henrici = report.henrici;
    return f;
}

double two_qubit_tangle(std::span<const Complex> v) {
    if (v.size() != 4) throw DimensionError("two_qubit_tangle: vector of length 4 required");
    if (std::abs(vector_norm(v) - 1.0) > 1e-10) {
        throw InvalidArgument("not-normalized", "two_qubit_tangle: state must have unit norm");
    }
    return std::norm(2.0 * (v[0] * v[3] - v[1] * v[2]));
}

}  // namespace spinpoint
