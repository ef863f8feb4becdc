#pragma once

#include <vector>

#include "spinpoint/cmatrix.hpp"

namespace spinpoint {

/// H(z) = A + z B over complex z.
class PencilFamily {
public:
    PencilFamily(CMatrix a, CMatrix b);

    const CMatrix& a() const noexcept { return a_; }
    const CMatrix& b() const noexcept { return b_; }
    std::size_t dimension() const noexcept { return a_.rows(); }
    CMatrix at(Complex z) const;

private:
    CMatrix a_;
    CMatrix b_;
};

/// Raised when every z is degenerate (the discriminant vanishes identically).
class ZeroDiscriminantError : public Error {
public:
    ZeroDiscriminantError() : Error("zero-discriminant", "discriminant vanishes identically", true) {}
};

/// Raised when the sheet tracer cannot resolve a step even after halving.
class PathError : public Error {
public:
    PathError(std::size_t step, const std::string& message)
        : Error("path-step-exhausted", message, true), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

struct Discriminant {
    CVector coeffs;             ///< D(z) from z^0 upwards, trailing negligible terms trimmed
    double sample_radius = 0;   ///< radius of the interpolation circle
    double max_sample = 0;      ///< max |D(z_j)| over the samples
    std::size_t samples = 0;
};

/// D(z) = Res_E(p, dp/dE) with p(E, z) = det(A + z B - E I), recovered from
/// samples on the circle |z| = 1 + ||A||_F / ||B||_F. `samples` = 0 selects
/// the minimum n(n-1) + 1.
Discriminant discriminant_poly(const PencilFamily& p, std::size_t samples = 0);

/// Evaluates the discriminant directly at z (monic char poly, Sylvester determinant).
Complex discriminant_at(const PencilFamily& p, Complex z);

struct EPCandidate {
    Complex z;
    Complex degenerate_eigenvalue;
    double gap = 0;                    ///< smallest pairwise eigenvalue distance of H(z)
    double discriminant_residual = 0;  ///< |D(z)| / max_sample |D|
    bool newton_converged = false;
    std::size_t multiplicity = 1;            ///< discriminant roots merged into this point
    std::size_t geometric_multiplicity = 1;  ///< n - rank(H(z) - lambda I)
    bool defective = true;                   ///< geometric_multiplicity == 1
};

/// Gap acceptance threshold at z:
/// 2 * max(1e-6, (n u)^(1/n)) * (1 + ||A||_F + |z| ||B||_F).
double gap_threshold(const PencilFamily& p, Complex z);

/// Smallest pairwise distance between the eigenvalues of h.
double eigen_gap(const CMatrix& h);

std::vector<EPCandidate> find_exceptional_points(const PencilFamily& p);

struct PathSpec {
    Complex center;
    double radius = 0.1;
    std::size_t steps = 256;  ///< steps per turn, at least 16
    int turns = 1;            ///< negative turns run clockwise
};

struct MonodromyResult {
    /// permutation[k] is the initial sheet that sheet k arrives at after the loop.
    std::vector<std::size_t> permutation;
    std::vector<double> t;
    std::vector<Complex> z;
    /// trajectories[step][sheet]
    std::vector<CVector> trajectories;
    double closure_error = 0;
};

/// Continues the eigenvalues of H(z) around the circle described by `path`.
/// Throws InvalidArgument ("path-near-ep") when the circle passes within
/// 1e-3 * radius of any of `known_eps`.
MonodromyResult trace_sheets(const PencilFamily& p, const PathSpec& path,
                             std::span<const EPCandidate> known_eps = {});

/// Minimum-cost assignment for a square cost matrix (row -> column).
std::vector<std::size_t> hungarian_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace spinpoint
