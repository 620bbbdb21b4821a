#pragma once

#include <Eigen/Dense>

#include "antireg/types.hpp"

namespace antireg {

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
/// `rank` counts eigenvalues above the scale-relative cutoff
/// sigma_j > kRankTolerance * sigma_1.
struct SpectrumView {
    Vector eigenvalues;   // descending
    Matrix eigenvectors;  // columns match eigenvalues
    Index rank = 0;
};

inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kDefaultSafetySlack = 0.05;

/// Largest admissible reward strength for a (covariance, weight) pair.
/// `raw` is the exact spectral bound; `clipped` = (1 - slack) * raw is what
/// callers should actually use.
struct SafetyBound {
    double raw = 0.0;
    double slack = kDefaultSafetySlack;
    double clipped = 0.0;
};

/// (1/n) X^T X. No centering: the second-moment matrix of the rows.
Matrix sample_covariance(const DesignMatrix& X);

/// Dense symmetric eigendecomposition. Throws NonSymmetric when the asymmetry
/// exceeds 1e-10 relative to the largest entry.
SpectrumView sym_eigendecomposition(const Matrix& A);

struct ExtremeEigs {
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    int iterations_max = 0;
    int iterations_min = 0;
};

/// Power iteration for sigma_max and inverse iteration for sigma_min of a
/// symmetric PSD matrix. The sigma_min estimate is biased downward by the
/// final residual so it never overestimates the true value by more than
/// `tolerance`; overestimation is the dangerous direction for safety bounds.
ExtremeEigs extreme_eigs_estimate(const Matrix& A, int iterations, double tolerance);

/// Largest lambda with Sigma - lambda * W positive definite, i.e. the smallest
/// generalized Rayleigh quotient inf_v v'Sigma v / v'W v. For W = I this is
/// sigma_min(Sigma). Throws DegenerateW when W vanishes (the bound is +inf).
SafetyBound safe_lambda_max(const Matrix& sigma_hat, const Matrix& W, double epsilon);

/// Sherman-Morrison-Woodbury update: (A + U C V)^{-1} from A^{-1}.
/// Throws SingularCapacitor when C or C^{-1} + V A^{-1} U is singular.
Matrix smw_update(const Matrix& A_inv, const Matrix& U, const Matrix& C, const Matrix& V);

bool is_effectively_identity(const Matrix& W, double tol = 1e-14);

}  // namespace antireg
