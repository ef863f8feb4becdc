#pragma once

#include <string_view>

#include "spinpoint/cmatrix.hpp"

namespace spinpoint {

/// Spin quantum number s held exactly as 2s. Basis rows are labelled
/// m = s, s-1, ..., -s (e_{s,s} first).
class Spin {
public:
    explicit Spin(int twice_spin);

    /// Accepts "3/2", "1.5" or "2"; the value must be a positive multiple of 1/2.
    static Spin parse(std::string_view text);

    int twice_spin() const noexcept { return twice_; }
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(twice_) + 1; }
    double value() const noexcept { return 0.5 * twice_; }
    /// Magnetic quantum number of basis row `row`.
    double m(std::size_t row) const noexcept { return value() - static_cast<double>(row); }

    friend bool operator==(Spin, Spin) = default;

private:
    int twice_;
};

enum class Axis { One = 1, Two = 2 };

Axis parse_axis(int axis);

struct SpinMatrices {
    Spin spin;
    CMatrix s_plus;
    CMatrix s_minus;
    CMatrix s1;
    CMatrix s2;
    CMatrix s3;
};

/// Raising operator; the only nonzero entries are the superdiagonal
/// sqrt((s - m)(s + m + 1)) with m the column label.
CMatrix ladder_plus(Spin s);
SpinMatrices spin_matrices(Spin s);

/// s3 + z * s_axis.
CMatrix nonnormal_hamiltonian(Spin s, Axis axis, Complex z);
/// Superdiagonal coefficients of s_plus, length 2s.
std::vector<double> ladder_coefficients(Spin s);

}  // namespace spinpoint
