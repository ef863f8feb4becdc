#pragma once

#include "spinpoint/cmatrix.hpp"
#include "spinpoint/spin.hpp"

namespace spinpoint {

/// Null vector of s3 + i s_axis obtained from the three-term row recurrence.
struct KernelSolution {
    Spin spin;
    Axis axis;
    CVector vector;      ///< unit norm, last component real positive
    CVector raw_vector;  ///< recurrence output with v_{-s} = 1
    double residual;     ///< ||(s3 + i s_axis) vector||_2
    double consistency;  ///< |top-row equation| evaluated on raw_vector
};

/// Solves (s3 + i s_axis) v = 0 bottom-up: v_{-s} = 1, the last row fixes
/// v_{-s+1}, each following row fixes the next component, and the first row
/// (unused by the recurrence) is reported as `consistency`.
KernelSolution kernel_vector(Spin s, Axis axis);

/// True when rank(s3 + i s_axis) = 2s, i.e. exactly one independent eigenvector.
bool verify_uniqueness(Spin s, Axis axis, const Tolerance& tol = {});

}  // namespace spinpoint
