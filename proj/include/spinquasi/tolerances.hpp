#pragma once

namespace spinquasi::tol {

// Shared by library and tests.
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double unitarity = 1e-10;
inline constexpr double residual = 1e-10;
inline constexpr double positivity = 1e-10;
// Permissive mode accepts eigenvalues down to this value with a warning.
inline constexpr double positivity_permissive = 1e-6;
inline constexpr double imaginary_moment = 1e-10;
inline constexpr double normalization = 1e-10;
inline constexpr double inversion_residual = 1e-8;
inline constexpr double mean_spin = 1e-8;
inline constexpr double squeeze_margin = 1e-12;
inline constexpr int jacobi_max_sweeps = 100;

}  // namespace spinquasi::tol
