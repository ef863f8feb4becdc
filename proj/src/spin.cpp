#include "spinpoint/spin.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace spinpoint {

namespace {

[[noreturn]] void bad_spin(std::string_view text) {
    throw InvalidArgument("invalid-spin", "spin must be a positive multiple of 1/2, got '" +
                                              std::string(text) + "'");
}

long parse_long(std::string_view text) {
    long v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) bad_spin(text);
    return v;
}

}  // namespace

Spin::Spin(int twice_spin) : twice_(twice_spin) {
    if (twice_spin < 1) {
        throw InvalidArgument("invalid-spin", "twice_spin must be >= 1, got " + std::to_string(twice_spin));
    }
}

Spin Spin::parse(std::string_view text) {
    if (text.empty()) bad_spin(text);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const long num = parse_long(text.substr(0, slash));
        const long den = parse_long(text.substr(slash + 1));
        if (den == 1) return Spin(static_cast<int>(2 * num));
        if (den == 2) return Spin(static_cast<int>(num));
        bad_spin(text);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const long whole = dot == 0 ? 0 : parse_long(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
        if (whole < 0 || (text.front() == '-')) bad_spin(text);
        if (frac.empty()) return Spin(static_cast<int>(2 * whole));
        if (frac == "5") return Spin(static_cast<int>(2 * whole + 1));
        bad_spin(text);
    }
    return Spin(static_cast<int>(2 * parse_long(text)));
}

Axis parse_axis(int axis) {
    if (axis == 1) return Axis::One;
    if (axis == 2) return Axis::Two;
    throw InvalidArgument("invalid-axis", "axis must be 1 or 2, got " + std::to_string(axis));
}

std::vector<double> ladder_coefficients(Spin s) {
    const double sv = s.value();
    std::vector<double> c(static_cast<std::size_t>(s.twice_spin()));
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double m = s.m(j + 1);  // column label of entry (j, j+1)
        c[j] = std::sqrt((sv - m) * (sv + m + 1.0));
    }
    return c;
}

CMatrix ladder_plus(Spin s) {
    const auto c = ladder_coefficients(s);
    CMatrix sp(s.dimension(), s.dimension());
    for (std::size_t j = 0; j < c.size(); ++j) sp(j, j + 1) = c[j];
    return sp;
}

SpinMatrices spin_matrices(Spin s) {
    const std::size_t n = s.dimension();
    const auto c = ladder_coefficients(s);
    SpinMatrices out{s, ladder_plus(s), CMatrix(n, n), CMatrix(n, n), CMatrix(n, n), CMatrix(n, n)};
    out.s_minus = adjoint(out.s_plus);
    for (std::size_t j = 0; j < c.size(); ++j) {
        // Entries written directly so s1, s2 are exactly hermitian.
        const double half = 0.5 * c[j];
        out.s1(j, j + 1) = half;
        out.s1(j + 1, j) = half;
        out.s2(j, j + 1) = Complex(0.0, -half);
        out.s2(j + 1, j) = Complex(0.0, half);
    }
    for (std::size_t j = 0; j < n; ++j) out.s3(j, j) = s.m(j);
    return out;
}

CMatrix nonnormal_hamiltonian(Spin s, Axis axis, Complex z) {
    const auto sm = spin_matrices(s);
    return add(sm.s3, scale(z, axis == Axis::One ? sm.s1 : sm.s2));
}

}  // namespace spinpoint
