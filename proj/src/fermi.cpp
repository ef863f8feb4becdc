#include "spinpoint/fermi.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace spinpoint {

namespace {

constexpr std::size_t kModes = 2;

// A Fock ket as a sign times an ascending string of creation operators
// acting on the vacuum, e.g. {0, 1} = c1^dagger c2^dagger |0>.
struct Ket {
    int sign = 1;
    std::vector<std::size_t> created;
};

// c_k |ket>: anticommute c_k leftwards past the creators in front of c_k^dagger,
// then use c_k c_k^dagger |rest> = |rest> (c_k annihilates the vacuum).
std::optional<Ket> annihilate(std::size_t k, Ket ket) {
    const auto it = std::find(ket.created.begin(), ket.created.end(), k);
    if (it == ket.created.end()) return std::nullopt;
    if ((it - ket.created.begin()) % 2 == 1) ket.sign = -ket.sign;
    ket.created.erase(it);
    return ket;
}

// c_j^dagger |ket>: prepend, then bubble into ascending order, one sign flip
// per transposition; a repeated creator gives zero.
std::optional<Ket> create(std::size_t j, Ket ket) {
    if (std::find(ket.created.begin(), ket.created.end(), j) != ket.created.end()) return std::nullopt;
    ket.created.insert(ket.created.begin(), j);
    for (std::size_t p = 0; p + 1 < ket.created.size() && ket.created[p] > ket.created[p + 1]; ++p) {
        std::swap(ket.created[p], ket.created[p + 1]);
        ket.sign = -ket.sign;
    }
    return ket;
}

const std::vector<std::vector<std::size_t>>& basis() {
    static const std::vector<std::vector<std::size_t>> b = {{}, {0}, {1}, {0, 1}};
    return b;
}

std::size_t basis_index(const std::vector<std::size_t>& created) {
    const auto& b = basis();
    return static_cast<std::size_t>(std::find(b.begin(), b.end(), created) - b.begin());
}

void require_2x2(const CMatrix& m) {
    if (m.rows() != kModes || m.cols() != kModes) {
        throw DimensionError("fermi: coefficient matrix must be 2x2");
    }
}

}  // namespace

CMatrix fock_representation(const CMatrix& m) {
    require_2x2(m);
    CMatrix rep(4, 4);
    for (std::size_t col = 0; col < 4; ++col) {
        for (std::size_t j = 0; j < kModes; ++j) {
            for (std::size_t k = 0; k < kModes; ++k) {
                auto lowered = annihilate(k, Ket{1, basis()[col]});
                if (!lowered) continue;
                auto raised = create(j, *lowered);
                if (!raised) continue;
                rep(basis_index(raised->created), col) += static_cast<double>(raised->sign) * m(j, k);
            }
        }
    }
    return rep;
}

FermiQuadratic quadratic_fermi_rep(const CMatrix& m) {
    require_2x2(m);
    CMatrix rep(4, 4);
    for (std::size_t j = 0; j < kModes; ++j)
        for (std::size_t k = 0; k < kModes; ++k) rep(1 + j, 1 + k) = m(j, k);
    rep(3, 3) = m(0, 0) + m(1, 1);

    if (rep != fock_representation(m)) {
        throw Error("cross-check-failed", "quadratic_fermi_rep: block rule disagrees with Fock construction",
                    true);
    }
    return {m, rep};
}

RepEigenAnalysis rep_eigen_analysis(const FermiQuadratic& f, const Tolerance& tol) {
    return {eigenvalues(f.rep), 4 - rank(f.rep, tol)};
}

}  // namespace spinpoint
