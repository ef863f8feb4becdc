#pragma once

#include <algorithm>
#include <array>
#include <numbers>
#include <cmath>
#include <random>

#include "spinpoint/cmatrix.hpp"

namespace spinpoint::testing {

inline CMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g;
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng)};
    return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    const CMatrix a = random_matrix(rng, n, n);
    CMatrix h = scale(0.5, add(a, adjoint(a)));
    for (std::size_t k = 0; k < n; ++k) h(k, k) = h(k, k).real();
    return h;
}

// Q from Gram-Schmidt on a random Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    CMatrix q = random_matrix(rng, n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                Complex dot{};
                for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, p)) * q(r, c);
                for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, p);
            }
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < n; ++r) nrm += std::norm(q(r, c));
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < n; ++r) q(r, c) /= nrm;
    }
    return q;
}

// Largest |x_k - y_k| after removing the best global phase between x and y.
inline double phase_distance(std::span<const Complex> x, std::span<const Complex> y) {
    Complex overlap{};
    for (std::size_t k = 0; k < x.size(); ++k) overlap += std::conj(y[k]) * x[k];
    const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
    double worst = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - phase * y[k]));
    return worst;
}

// Smallest sum of distances over all matchings of two small eigenvalue lists.
inline double matched_distance(CVector a, CVector b) {
    std::sort(b.begin(), b.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    double best = INFINITY;
    do {
        double worst = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
        best = std::min(best, worst);
    } while (std::next_permutation(b.begin(), b.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    }));
    return best;
}

// Distance from v to the closest product state a (x) b, found by a grid over
// the Bloch angles of a and b followed by local refinement. Product states
// with the best overlap give 1 - max |<a (x) b|v>|^2.
inline double product_distance_oracle(const CVector& v) {
    auto qubit = [](double theta, double phi) {
        return std::array<Complex, 2>{std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
    };
    auto overlap = [&](const std::array<double, 4>& x) {
        const auto a = qubit(x[0], x[1]);
        const auto b = qubit(x[2], x[3]);
        Complex s{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += std::conj(a[i] * b[j]) * v[2 * i + j];
        return std::norm(s);
    };
    const int grid = 24;
    std::array<double, 4> best{};
    double best_val = -1.0;
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j < grid; ++j)
            for (int k = 0; k <= grid; ++k)
                for (int l = 0; l < grid; ++l) {
                    const std::array<double, 4> x{std::numbers::pi * i / grid, 2 * std::numbers::pi * j / grid,
                                                  std::numbers::pi * k / grid, 2 * std::numbers::pi * l / grid};
                    const double val = overlap(x);
                    if (val > best_val) {
                        best_val = val;
                        best = x;
                    }
                }
    for (double step = 0.1; step > 1e-9; step *= 0.5) {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int d = 0; d < 4; ++d)
                for (double sgn : {-1.0, 1.0}) {
                    auto trial = best;
                    trial[d] += sgn * step;
                    const double val = overlap(trial);
                    if (val > best_val) {
                        best_val = val;
                        best = trial;
                        moved = true;
                    }
                }
        }
    }
    return 1.0 - best_val;
}

}  // namespace spinpoint::testing
