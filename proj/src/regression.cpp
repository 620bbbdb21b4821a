#include "antireg/regression.hpp"

#include <cmath>

namespace antireg {

double hessian_min_eig(const Matrix& sigma_hat, double lambda, const Matrix& W) {
    Matrix H = sigma_hat - lambda * W;
    SpectrumView s = sym_eigendecomposition(0.5 * (H + H.transpose()));
    return s.eigenvalues(s.eigenvalues.size() - 1);
}

namespace {

void require_safe(const RegressionProblem& problem, const Matrix& sigma_hat, const Matrix& W) {
    if (hessian_min_eig(sigma_hat, problem.lambda, W) > 0.0) return;
    SafetyBound bound;
    try {
        bound = safe_lambda_max(sigma_hat, W, kDefaultSafetySlack);
    } catch (const Error&) {
        // Degenerate weight or covariance: report a zero bound.
    }
    throw UnsafeLambda("lambda is at or past the spectral safety bound", bound, problem.lambda);
}

}  // namespace

Vector closed_form_solve(const RegressionProblem& problem) {
    const Matrix& X = problem.X.values();
    const double n = static_cast<double>(problem.X.rows());
    const Matrix W = problem.weight_or_identity();
    const Matrix sigma_hat = sample_covariance(problem.X);
    require_safe(problem, sigma_hat, W);

    Matrix A = X.transpose() * X - n * problem.lambda * W;
    A = 0.5 * (A + A.transpose());
    Vector b = X.transpose() * problem.y;

    Eigen::LLT<Matrix> llt(A);
    Vector theta;
    if (llt.info() == Eigen::Success) {
        theta = llt.solve(b);
        // One refinement step keeps the normal-equation residual tight even
        // when (sigma_j - lambda) is small.
        theta += llt.solve(b - A * theta);
        double rcond_proxy = (A * theta - b).norm() / std::max(1.0, b.norm());
        if (rcond_proxy < 1e-8) return theta;
    }
    // Factorization failed or lost too much precision: solve through the
    // eigenbasis instead.
    SpectrumView s = sym_eigendecomposition(A);
    Vector inv = s.eigenvalues.cwiseInverse();
    theta = s.eigenvectors * inv.asDiagonal() * (s.eigenvectors.transpose() * b);
    return theta;
}

std::pair<double, Vector> objective_and_gradient(const RegressionProblem& problem,
                                                 const Vector& theta) {
    const Matrix& X = problem.X.values();
    const double n = static_cast<double>(problem.X.rows());
    const Matrix W = problem.weight_or_identity();

    Vector residual = problem.y - X * theta;
    double value = 0.5 * residual.squaredNorm() / n -
                   0.5 * problem.lambda * theta.dot(W * theta);
    Vector grad = (X.transpose() * (X * theta) - X.transpose() * problem.y) / n -
                  problem.lambda * (W * theta);
    return {value, grad};
}

GDCertificate gd_certificate(const Matrix& sigma_hat, double lambda, const Matrix& W) {
    Matrix H = sigma_hat - lambda * W;
    SpectrumView s = sym_eigendecomposition(0.5 * (H + H.transpose()));
    const double L = s.eigenvalues(0);
    const double mu = s.eigenvalues(s.eigenvalues.size() - 1);
    if (mu <= 0.0) {
        SafetyBound bound;
        try {
            bound = safe_lambda_max(sigma_hat, W, kDefaultSafetySlack);
        } catch (const Error&) {
        }
        throw UnsafeLambda("gd_certificate: Hessian is not positive definite", bound, lambda);
    }
    GDCertificate cert;
    cert.L = L;
    cert.mu = mu;
    cert.eta_star = 2.0 / (L + mu);
    const double kappa = L / mu;
    cert.rho_star = (kappa - 1.0) / (kappa + 1.0);
    return cert;
}

GdResult gd_solve(const RegressionProblem& problem, double eta, int max_iters, double tolerance,
                  std::optional<Vector> theta0) {
    const Matrix sigma_hat = sample_covariance(problem.X);
    const Matrix W = problem.weight_or_identity();
    GDCertificate cert = gd_certificate(sigma_hat, problem.lambda, W);
    if (eta <= 0.0 || eta >= 2.0 / cert.L)
        throw StepTooLarge("gd_solve: step size outside (0, 2/L)");

    Vector theta_star = closed_form_solve(problem);
    Vector theta = theta0 ? *theta0 : Vector(Vector::Zero(problem.X.cols()));

    GdResult result;
    result.error_trace.push_back((theta - theta_star).norm());
    for (int it = 0; it < max_iters; ++it) {
        if (result.error_trace.back() <= tolerance) {
            result.iterations = it;
            result.theta = theta;
            return result;
        }
        theta -= eta * objective_and_gradient(problem, theta).second;
        result.error_trace.push_back((theta - theta_star).norm());
    }
    if (result.error_trace.back() > tolerance)
        throw MaxIters("gd_solve: tolerance not reached within the iteration budget");
    result.iterations = max_iters;
    result.theta = theta;
    return result;
}

std::vector<double> divergence_probe(const RegressionProblem& problem,
                                     const std::vector<double>& scales) {
    const Matrix sigma_hat = sample_covariance(problem.X);
    SpectrumView s = sym_eigendecomposition(sigma_hat);
    // Bottom eigenvector; among an equal-eigenvalue block take the lowest
    // index for determinism.
    const Index p = s.eigenvalues.size();
    Index pick = p - 1;
    const double sigma_min = s.eigenvalues(p - 1);
    for (Index j = p - 1; j >= 0; --j) {
        if (std::abs(s.eigenvalues(j) - sigma_min) <= 1e-12 * std::max(1.0, std::abs(sigma_min)))
            pick = j;
        else
            break;
    }
    Vector u = s.eigenvectors.col(pick);

    std::vector<double> values;
    values.reserve(scales.size());
    for (double t : scales)
        values.push_back(objective_and_gradient(problem, t * u).first);
    return values;
}

}  // namespace antireg
