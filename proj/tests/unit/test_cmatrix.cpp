#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "spinpoint/cmatrix.hpp"
#include "spinpoint/spin.hpp"
#include "support.hpp"

using namespace spinpoint;
using spinpoint::testing::random_matrix;
using spinpoint::testing::random_unitary;

namespace {

const CMatrix sigma1{{0.0, 1.0}, {1.0, 0.0}};
const CMatrix sigma3{{1.0, 0.0}, {0.0, -1.0}};

double unitarity_error(const CMatrix& u) {
    return frobenius_norm(mul(adjoint(u), u) - CMatrix::identity(u.rows()));
}

double below_diagonal(const CMatrix& t) {
    double s = 0.0;
    for (std::size_t r = 1; r < t.rows(); ++r)
        for (std::size_t c = 0; c < r; ++c) s += std::norm(t(r, c));
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("construction validates shape and finiteness") {
    CHECK_THROWS_AS(CMatrix(2, 2, CVector(3)), DimensionError);
    CHECK_THROWS_AS(CMatrix(1, 1, {Complex{NAN, 0.0}}), NonFiniteError);
    CHECK_THROWS_AS((CMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
    const CMatrix m{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(m(1, 0) == Complex{3.0});
    CHECK(m.trace() == Complex{5.0});
}

TEST_CASE("arithmetic rejects mismatched shapes") {
    CHECK_THROWS_AS(add(CMatrix(2, 2), CMatrix(3, 3)), DimensionError);
    CHECK_THROWS_AS(mul(CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(commutator(CMatrix(2, 3), CMatrix(3, 2)), DimensionError);
}

TEST_CASE("overflow surfaces as a numerical error") {
    const CMatrix big{{1e300, 0.0}, {0.0, 1e300}};
    CHECK_THROWS_AS(mul(big, big), NonFiniteError);
}

TEST_CASE("sigma3 + i sigma1 basics") {
    const CMatrix a = sigma3 + kI * sigma1;
    CHECK(rank(a) == 1);
    CHECK(std::abs(determinant(a)) < 1e-15);
    CHECK(frobenius_norm(mul(a, a)) < 1e-15);
    const CMatrix ns = null_space(a);
    REQUIRE(ns.cols() == 1);
    CHECK(vector_norm(mul(a, ns.column(0))) < 1e-14);
}

TEST_CASE("Schur form of sigma3 + i sigma1") {
    const CMatrix a = sigma3 + kI * sigma1;
    const SchurForm s = schur(a);
    CHECK(std::abs(s.t(0, 0)) < 1e-10);
    CHECK(std::abs(s.t(1, 1)) < 1e-10);
    CHECK(std::abs(std::abs(s.t(0, 1)) - 2.0) < 1e-10);
    CHECK(s.residual < 1e-14);
    CHECK(unitarity_error(s.u) < 1e-14);
}

TEST_CASE("Schur residuals on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const CMatrix a = random_matrix(rng, n, n);
        const SchurForm s = schur(a);
        const double scale_n = 1e-12 * static_cast<double>(n) * frobenius_norm(a);
        CHECK(frobenius_norm(a - s.u * s.t * adjoint(s.u)) <= scale_n);
        CHECK(unitarity_error(s.u) <= 1e-12 * static_cast<double>(n));
        CHECK(below_diagonal(s.t) == 0.0);
    }
}

TEST_CASE("eigenvalues of triangular and diagonal matrices") {
    const CMatrix t{{1.0, 5.0, 2.0}, {0.0, Complex{0, 2}, 7.0}, {0.0, 0.0, -3.0}};
    const CVector ev = eigenvalues(t);
    // descending modulus
    CHECK(std::abs(ev[0] - Complex{-3.0}) < 1e-13);
    CHECK(std::abs(ev[1] - Complex{0, 2}) < 1e-13);
    CHECK(std::abs(ev[2] - Complex{1.0}) < 1e-13);
}

TEST_CASE("eigenvalue ordering ties break on real then imaginary part") {
    CVector v{Complex{0, 1}, Complex{-1, 0}, Complex{1, 0}, Complex{0, -1}};
    sort_eigenvalues(v);
    CHECK(v == CVector{Complex{1, 0}, Complex{0, 1}, Complex{0, -1}, Complex{-1, 0}});
}

TEST_CASE("eigenvalues match char_poly roots through the trace and determinant") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const CMatrix a = random_matrix(rng, n, n);
        const CVector ev = eigenvalues(a);
        Complex sum{}, prod{1.0};
        for (auto e : ev) {
            sum += e;
            prod *= e;
        }
        CHECK(std::abs(sum - a.trace()) < 1e-11 * (1 + frobenius_norm(a)));
        CHECK(std::abs(prod - determinant(a)) < 1e-10 * (1 + std::abs(determinant(a))));
        const CVector cp = char_poly(a);
        for (auto e : ev) {
            Complex p{};
            for (auto it = cp.rbegin(); it != cp.rend(); ++it) p = p * e + *it;
            CHECK(std::abs(p) < 1e-8 * std::pow(1 + frobenius_norm(a), static_cast<double>(n)));
        }
    }
}

TEST_CASE("char_poly is det(A - E I) in ascending order") {
    // det([[1,2],[3,4]] - E I) = E^2 - 5E - 2
    const CVector c = char_poly(CMatrix{{1.0, 2.0}, {3.0, 4.0}});
    REQUIRE(c.size() == 3);
    CHECK(std::abs(c[0] - Complex{-2.0}) < 1e-14);
    CHECK(std::abs(c[1] - Complex{-5.0}) < 1e-14);
    CHECK(std::abs(c[2] - Complex{1.0}) < 1e-14);
    // odd size carries the sign: det(2 - E) = 2 - E
    const CVector d = char_poly(CMatrix{{2.0}});
    CHECK(std::abs(d[0] - Complex{2.0}) < 1e-15);
    CHECK(std::abs(d[1] - Complex{-1.0}) < 1e-15);
}

TEST_CASE("kron eigenvalues are pairwise products") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const CMatrix a = random_matrix(rng, 2, 2);
        const CMatrix b = random_matrix(rng, 3, 3);
        const CVector ea = eigenvalues(a), eb = eigenvalues(b);
        const CVector ek = eigenvalues(kron(a, b));
        for (auto x : ea)
            for (auto y : eb) {
                double best = INFINITY;
                for (auto z : ek) best = std::min(best, std::abs(z - x * y));
                CHECK(best < 1e-10 * (1 + std::abs(x * y)));
            }
    }
}

TEST_CASE("kron and direct_sum layout") {
    const CMatrix k = kron(sigma1, sigma3);
    CHECK(k(0, 2) == Complex{1.0});
    CHECK(k(1, 3) == Complex{-1.0});
    CHECK(k(0, 0) == Complex{0.0});
    const CMatrix d = direct_sum(sigma1, CMatrix{{5.0}});
    CHECK(d.rows() == 3);
    CHECK(d(2, 2) == Complex{5.0});
    CHECK(d(0, 2) == Complex{0.0});
}

TEST_CASE("rank is invariant under random unitary factors on the spin family") {
    std::mt19937_64 rng(17);
    for (int twice = 1; twice <= 10; ++twice) {
        const std::size_t n = static_cast<std::size_t>(twice) + 1;
        const CMatrix h = nonnormal_hamiltonian(Spin(twice), Axis::One, kI);
        const CMatrix u = random_unitary(rng, n), v = random_unitary(rng, n);
        const CMatrix moved = u * h * v;
        const double floor = 1e-10 * (1 + frobenius_norm(h));
        CHECK(rank(h) == n - 1);
        CHECK(rank(moved, {floor, 1e-10}) == n - 1);
    }
}

TEST_CASE("null_space returns orthonormal kernel columns") {
    const CMatrix a{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}, {1.0, 0.0, 1.0}};
    const CMatrix ns = null_space(a);
    REQUIRE(ns.cols() == 1);
    CHECK(frobenius_norm(a * ns) < 1e-13);
    CHECK(std::abs(vector_norm(ns.column(0)) - 1.0) < 1e-14);
    CHECK(null_space(CMatrix::identity(3)).cols() == 0);
    CHECK(null_space(CMatrix::zero(3)).cols() == 3);
}

TEST_CASE("matrix_exp identities") {
    const CMatrix n = sigma3 + kI * sigma1;
    CHECK(frobenius_norm(matrix_exp(n) - (CMatrix::identity(2) + n)) <= 1e-13);

    const CMatrix rot{{0.0, -std::numbers::pi / 2}, {std::numbers::pi / 2, 0.0}};
    const CMatrix r = matrix_exp(rot);
    CHECK(std::abs(r(0, 0)) < 1e-15);
    CHECK(std::abs(r(1, 0) - Complex{1.0}) < 1e-15);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 1 + trial % 5;
        const CMatrix a = scale(0.5 + trial * 0.2, random_matrix(rng, k, k));
        const CMatrix p = matrix_exp(a) * matrix_exp(-a);
        CHECK(frobenius_norm(p - CMatrix::identity(k)) < 1e-10 * std::exp(2 * frobenius_norm(a)));
    }
}

TEST_CASE("matrix_power") {
    const CMatrix a{{1.0, 1.0}, {0.0, 1.0}};
    const CMatrix p = matrix_power(a, 10);
    CHECK(p(0, 1) == Complex{10.0});
    CHECK(matrix_power(a, 0) == CMatrix::identity(2));
    CHECK_THROWS_AS(matrix_power(CMatrix(2, 3), 2), DimensionError);
}

TEST_CASE("is_hermitian") {
    CHECK(is_hermitian(sigma1));
    CHECK_FALSE(is_hermitian(sigma3 + kI * sigma1));
    CHECK_FALSE(is_hermitian(CMatrix(2, 3)));
}

TEST_CASE("1x1 and empty edge cases") {
    CHECK(eigenvalues(CMatrix{{Complex{2, 3}}}) == CVector{Complex{2, 3}});
    CHECK(determinant(CMatrix{{Complex{2, 3}}}) == Complex{2, 3});
    CHECK(rank(CMatrix{{0.0}}) == 0);
    CHECK_THROWS_AS(eigenvalues(CMatrix(2, 3)), DimensionError);
}
