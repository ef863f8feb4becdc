#pragma once

#include "spinpoint/cmatrix.hpp"

namespace spinpoint {

/// Two-mode quadratic Fermi operator sum_jk m_jk c_j^dagger c_k in the Fock
/// basis |0>, c1^dagger|0>, c2^dagger|0>, c1^dagger c2^dagger|0>.
struct FermiQuadratic {
    CMatrix m;
    CMatrix rep;
};

/// Builds the 4x4 representation by the block rule (vacuum 0, one-particle
/// block m, two-particle corner trace m) and checks it entry-for-entry
/// against `fock_representation`.
FermiQuadratic quadratic_fermi_rep(const CMatrix& m);

/// Independent construction: applies each c_j^dagger c_k to the basis kets
/// using only the anticommutation rules.
CMatrix fock_representation(const CMatrix& m);

struct RepEigenAnalysis {
    CVector eigenvalues;
    std::size_t zero_multiplicity;  ///< 4 - rank(rep)
};

RepEigenAnalysis rep_eigen_analysis(const FermiQuadratic& f, const Tolerance& tol = {});

}  // namespace spinpoint
