#include "spinpoint/kernel.hpp"

#include <cmath>

namespace spinpoint {

namespace {

// Off-diagonal entries of s3 + i s_axis: (j, j+1) above, (j+1, j) below.
struct Couplings {
    CVector upper;
    CVector lower;
};

Couplings couplings(Spin s, Axis axis) {
    const auto c = ladder_coefficients(s);
    Couplings out{CVector(c.size()), CVector(c.size())};
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double half = 0.5 * c[j];
        if (axis == Axis::One) {
            // i * s1: both entries i c/2.
            out.upper[j] = Complex(0.0, half);
            out.lower[j] = Complex(0.0, half);
        } else {
            // i * s2: (j, j+1) = i(-i c/2) = c/2, (j+1, j) = i(i c/2) = -c/2.
            out.upper[j] = half;
            out.lower[j] = -half;
        }
    }
    return out;
}

}  // namespace

KernelSolution kernel_vector(Spin s, Axis axis) {
    const std::size_t n = s.dimension();
    const auto k = couplings(s, axis);

    // Row j reads lower[j-1] v[j-1] + m_j v[j] + upper[j] v[j+1] = 0.
    CVector v(n);
    v[n - 1] = 1.0;
    v[n - 2] = -s.m(n - 1) * v[n - 1] / k.lower[n - 2];
    for (std::size_t j = n - 2; j >= 1; --j) {
        v[j - 1] = -(s.m(j) * v[j] + k.upper[j] * v[j + 1]) / k.lower[j - 1];
    }
    const Complex top = s.m(0) * v[0] + k.upper[0] * v[1];

    const double nrm = vector_norm(v);
    CVector unit(n);
    for (std::size_t j = 0; j < n; ++j) unit[j] = v[j] / nrm;

    const CMatrix h = nonnormal_hamiltonian(s, axis, kI);
    return KernelSolution{s, axis, unit, v, vector_norm(mul(h, unit)), std::abs(top)};
}

bool verify_uniqueness(Spin s, Axis axis, const Tolerance& tol) {
    return rank(nonnormal_hamiltonian(s, axis, kI), tol) == s.dimension() - 1;
}

}  // namespace spinpoint
