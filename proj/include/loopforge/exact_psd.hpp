#pragma once

#include <optional>
#include <vector>

#include "loopforge/lie_algebra.hpp"

namespace loopforge {

using ExactMatrix = std::vector<std::vector<Gaussian>>;

bool is_hermitian(const ExactMatrix& m);

/// v^dagger M v.
Gaussian hermitian_form(const ExactMatrix& m, const ExactVec& v);

struct PsdDecision {
    bool psd = true;
    /// When not PSD: a vector v with v^dagger M v < 0, and that value.
    std::optional<ExactVec> witness;
    Rational witness_value{0};
    /// Number of strictly positive pivots, i.e. the rank when PSD.
    int rank = 0;
};

/// Exact positive-semidefiniteness of a Hermitian Gaussian-rational matrix.
///
/// The matrix is scaled to Gaussian-integer entries and reduced by Bareiss
/// elimination with symmetric diagonal pivoting: every division is exact and
/// every intermediate entry is integral. A negative diagonal entry or a zero
/// diagonal with a nonzero off-diagonal entry certifies indefiniteness; the
/// certificate is lifted back to the original coordinates and re-checked.
/// Throws ParameterError if the matrix is not Hermitian.
PsdDecision decide_psd(const ExactMatrix& m);

/// Solves A x = b for nonsingular A by exact elimination.
ExactVec solve_exact(ExactMatrix a, ExactVec b);

}  // namespace loopforge
