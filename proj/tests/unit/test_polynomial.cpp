#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spinpoint/polynomial.hpp"
#include "support.hpp"

using namespace spinpoint;
using spinpoint::testing::matched_distance;

TEST_CASE("evaluate and derivative") {
    const CVector p{1.0, -3.0, 2.0};  // 2x^2 - 3x + 1
    CHECK(poly::evaluate(p, 1.0) == Complex{0.0});
    CHECK(poly::evaluate(p, 0.5) == Complex{0.0});
    CHECK(poly::derivative(p) == CVector{-3.0, 4.0});
    CHECK(poly::derivative(CVector{5.0}) == CVector{0.0});
}

TEST_CASE("trim") {
    CHECK(poly::trim(CVector{1.0, 2.0, 1e-20}, 1e-12).size() == 2);
    CHECK(poly::trim(CVector{0.0, 0.0}, 0.0).empty());
}

TEST_CASE("roots from the companion matrix") {
    const CVector r = poly::roots(CVector{1.0, -3.0, 2.0});
    CHECK(matched_distance(r, CVector{1.0, 0.5}) < 1e-14);
    const CVector c = poly::roots(CVector{1.0, 0.0, 1.0});
    CHECK(matched_distance(c, CVector{kI, -kI}) < 1e-14);
    CHECK(poly::roots(CVector{3.0}).empty());

    std::mt19937_64 rng(61);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        CVector want(1 + trial % 5);
        for (auto& x : want) x = {g(rng), g(rng)};
        CVector coeffs{1.0};
        for (auto w : want) {
            CVector next(coeffs.size() + 1);
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                next[k] -= w * coeffs[k];
                next[k + 1] += coeffs[k];
            }
            coeffs = next;
        }
        CHECK(matched_distance(poly::roots(coeffs), want) < 1e-9);
    }
}

TEST_CASE("resultant vanishes exactly on a common root") {
    const CVector p{-2.0, 1.0};       // x - 2
    const CVector q{-6.0, 1.0, 1.0};  // (x - 2)(x + 3)
    CHECK(std::abs(poly::resultant(p, q)) < 1e-13);
    // Res(x - a, x - b) = b - a up to the sign convention of the Sylvester layout
    CHECK(std::abs(std::abs(poly::resultant(CVector{-1.0, 1.0}, CVector{-4.0, 1.0})) - 3.0) < 1e-14);
}

TEST_CASE("discriminant of a quadratic through the resultant") {
    // Res(p, p') for p = x^2 + b x + c equals c*4 - b^2 up to sign
    const CVector p{3.0, 5.0, 1.0};
    const Complex r = poly::resultant(p, poly::derivative(p));
    CHECK(std::abs(std::abs(r) - std::abs(4.0 * 3.0 - 25.0)) < 1e-12);
}

TEST_CASE("sylvester layout") {
    const CMatrix s = poly::sylvester(CVector{1.0, 2.0, 3.0}, CVector{4.0, 5.0});
    // p = 3x^2 + 2x + 1 (one row), q = 5x + 4 (two rows)
    CHECK(s == CMatrix{{3.0, 2.0, 1.0}, {5.0, 4.0, 0.0}, {0.0, 5.0, 4.0}});
}
