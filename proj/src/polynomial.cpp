#include "spinpoint/polynomial.hpp"

#include <algorithm>

namespace spinpoint::poly {

Complex evaluate(std::span<const Complex> coeffs, Complex x) {
    Complex acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

CVector derivative(std::span<const Complex> coeffs) {
    if (coeffs.size() <= 1) return {Complex{}};
    CVector d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs[k];
    return d;
}

CVector trim(std::span<const Complex> coeffs, double relative) {
    double biggest = 0.0;
    for (const auto& c : coeffs) biggest = std::max(biggest, std::abs(c));
    std::size_t len = coeffs.size();
    while (len > 0 && (std::abs(coeffs[len - 1]) <= relative * biggest || coeffs[len - 1] == Complex{})) --len;
    return CVector(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(len));
}

CVector roots(std::span<const Complex> coeffs) {
    const CVector c = trim(coeffs, 0.0);
    if (c.size() <= 1) return {};
    const std::size_t deg = c.size() - 1;
    const Complex lead = c[deg];
    // Companion matrix with the monic coefficients in the first row.
    CMatrix comp(deg, deg);
    for (std::size_t k = 0; k < deg; ++k) comp(0, k) = -c[deg - 1 - k] / lead;
    for (std::size_t k = 1; k < deg; ++k) comp(k, k - 1) = 1.0;
    return eigenvalues(comp);
}

CMatrix sylvester(std::span<const Complex> p, std::span<const Complex> q) {
    const std::size_t m = p.size() - 1;
    const std::size_t k = q.size() - 1;
    const std::size_t size = m + k;
    CMatrix s(size, size);
    // k shifted copies of p, then m shifted copies of q, highest degree first.
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j <= m; ++j) s(r, r + j) = p[m - j];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= k; ++j) s(k + r, r + j) = q[k - j];
    return s;
}

Complex resultant(std::span<const Complex> p, std::span<const Complex> q) {
    if (p.size() < 2 || q.empty()) throw DimensionError("resultant: degree too small");
    if (q.size() == 1) return std::pow(q[0], static_cast<int>(p.size() - 1));
    return determinant(sylvester(p, q));
}

}  // namespace spinpoint::poly
