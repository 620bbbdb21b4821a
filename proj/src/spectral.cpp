#include "antireg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace antireg {

Matrix sample_covariance(const DesignMatrix& X) {
    const Matrix& V = X.values();
    Matrix cov = (V.transpose() * V) / static_cast<double>(X.rows());
    // Symmetrize to wash out accumulation-order rounding.
    return 0.5 * (cov + cov.transpose());
}

namespace {

double max_abs(const Matrix& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace

SpectrumView sym_eigendecomposition(const Matrix& A) {
    if (A.rows() != A.cols()) throw NonSymmetric("sym_eigendecomposition: matrix not square");
    const double scale = std::max(1.0, max_abs(A));
    if (max_abs(A - A.transpose()) > 1e-10 * scale)
        throw NonSymmetric("sym_eigendecomposition: asymmetry exceeds tolerance");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (A + A.transpose()));
    if (solver.info() != Eigen::Success)
        throw NoConvergence("sym_eigendecomposition: eigensolver failed");

    // Eigen returns ascending order; flip to descending.
    const Index p = A.rows();
    SpectrumView view;
    view.eigenvalues = solver.eigenvalues().reverse();
    view.eigenvectors = solver.eigenvectors().rowwise().reverse();
    const double sigma1 = std::abs(view.eigenvalues(0));
    view.rank = 0;
    for (Index j = 0; j < p; ++j)
        if (view.eigenvalues(j) > kRankTolerance * sigma1) ++view.rank;
    return view;
}

ExtremeEigs extreme_eigs_estimate(const Matrix& A, int iterations, double tolerance) {
    const Index p = A.rows();
    if (p != A.cols()) throw InvalidArgument("extreme_eigs_estimate: matrix not square");
    if (iterations < 1) throw InvalidArgument("extreme_eigs_estimate: need at least one iteration");

    std::mt19937_64 rng(0x5EEDBA5Eu);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_unit = [&]() {
        Vector v(p);
        for (Index i = 0; i < p; ++i) v(i) = gauss(rng);
        v.normalize();
        return v;
    };

    ExtremeEigs out;

    // Power iteration for the top eigenvalue.
    {
        Vector v = random_unit();
        double prev = 0.0;
        bool converged = false;
        for (int it = 0; it < iterations; ++it) {
            Vector w = A * v;
            double norm = w.norm();
            if (norm == 0.0) {  // A annihilates v: the zero matrix case
                out.sigma_max = 0.0;
                out.iterations_max = it + 1;
                converged = true;
                break;
            }
            v = w / norm;
            double rq = v.dot(A * v);
            out.iterations_max = it + 1;
            if (it > 0 && std::abs(rq - prev) <= tolerance * std::max(1.0, std::abs(rq))) {
                double residual = (A * v - rq * v).norm();
                if (residual <= tolerance * std::max(1.0, std::abs(rq))) {
                    out.sigma_max = rq + residual;  // conservative on the large side
                    converged = true;
                    break;
                }
            }
            prev = rq;
        }
        if (!converged) throw NoConvergence("extreme_eigs_estimate: power iteration budget exhausted");
    }

    // Inverse iteration for the bottom eigenvalue. A failed factorization of a
    // PSD matrix means sigma_min is numerically zero, which is already the
    // conservative answer.
    {
        Eigen::LDLT<Matrix> factor(A);
        bool solvable = factor.info() == Eigen::Success && factor.isPositive();
        if (solvable && factor.vectorD().minCoeff() <= 0.0) solvable = false;
        if (!solvable) {
            out.sigma_min = 0.0;
            out.iterations_min = 0;
            return out;
        }
        Vector v = random_unit();
        double prev = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (int it = 0; it < iterations; ++it) {
            Vector w = factor.solve(v);
            double norm = w.norm();
            if (!std::isfinite(norm) || norm == 0.0) {
                out.sigma_min = 0.0;
                out.iterations_min = it + 1;
                converged = true;
                break;
            }
            v = w / norm;
            double rq = v.dot(A * v);
            out.iterations_min = it + 1;
            if (it > 0 && std::abs(rq - prev) <= tolerance * std::max(1.0, std::abs(rq))) {
                double residual = (A * v - rq * v).norm();
                if (residual <= tolerance * std::max(1.0, std::abs(rq))) {
                    // There is an eigenvalue within `residual` of the Rayleigh
                    // quotient; subtracting keeps the estimate a lower bound.
                    out.sigma_min = std::max(0.0, rq - residual);
                    converged = true;
                    break;
                }
            }
            prev = rq;
        }
        if (!converged) throw NoConvergence("extreme_eigs_estimate: inverse iteration budget exhausted");
    }

    return out;
}

bool is_effectively_identity(const Matrix& W, double tol) {
    if (W.rows() != W.cols()) return false;
    return max_abs(W - Matrix::Identity(W.rows(), W.cols())) <= tol;
}

SafetyBound safe_lambda_max(const Matrix& sigma_hat, const Matrix& W, double epsilon) {
    if (epsilon < 0.0 || epsilon >= 1.0)
        throw InvalidArgument("safe_lambda_max: slack must lie in [0, 1)");
    if (sigma_hat.rows() != W.rows() || sigma_hat.cols() != W.cols())
        throw InvalidArgument("safe_lambda_max: shape mismatch");

    SafetyBound bound;
    bound.slack = epsilon;

    if (is_effectively_identity(W)) {
        SpectrumView s = sym_eigendecomposition(sigma_hat);
        bound.raw = s.eigenvalues(s.eigenvalues.size() - 1);
    } else {
        if (max_abs(W) <= 0.0) throw DegenerateW("safe_lambda_max: W is zero, bound is unbounded");
        // Whitened form: Sigma - lambda W > 0  iff  lambda < 1 / sigma_max(A)
        // with A = Sigma^{-1/2} W Sigma^{-1/2}; requires Sigma > 0.
        SpectrumView s = sym_eigendecomposition(sigma_hat);
        const double sigma_min = s.eigenvalues(s.eigenvalues.size() - 1);
        if (sigma_min <= 0.0)
            throw InvalidArgument("safe_lambda_max: covariance must be positive definite for weighted bounds");
        Vector inv_sqrt = s.eigenvalues.cwiseSqrt().cwiseInverse();
        Matrix root = s.eigenvectors * inv_sqrt.asDiagonal() * s.eigenvectors.transpose();
        Matrix A = root * W * root;
        SpectrumView sa = sym_eigendecomposition(0.5 * (A + A.transpose()));
        const double a_max = sa.eigenvalues(0);
        if (a_max <= 0.0) throw DegenerateW("safe_lambda_max: W is zero on the span of the data");
        bound.raw = 1.0 / a_max;
    }

    bound.clipped = (1.0 - epsilon) * bound.raw;
    return bound;
}

Matrix smw_update(const Matrix& A_inv, const Matrix& U, const Matrix& C, const Matrix& V) {
    if (A_inv.rows() != A_inv.cols()) throw InvalidArgument("smw_update: A_inv not square");
    if (U.rows() != A_inv.rows() || V.cols() != A_inv.cols() || C.rows() != U.cols() ||
        C.cols() != V.rows())
        throw InvalidArgument("smw_update: nonconformable shapes");

    Eigen::FullPivLU<Matrix> c_lu(C);
    if (!c_lu.isInvertible()) throw SingularCapacitor("smw_update: C is singular");
    Matrix capacitor = c_lu.inverse() + V * A_inv * U;
    Eigen::FullPivLU<Matrix> cap_lu(capacitor);
    if (!cap_lu.isInvertible())
        throw SingularCapacitor("smw_update: C^{-1} + V A^{-1} U is singular");
    return A_inv - A_inv * U * cap_lu.inverse() * V * A_inv;
}

}  // namespace antireg
