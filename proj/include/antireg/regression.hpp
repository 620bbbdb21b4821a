#pragma once

#include <optional>
#include <vector>

#include "antireg/spectral.hpp"
#include "antireg/types.hpp"

namespace antireg {

/// Least squares with a sign-reversed ridge term:
///   F(theta) = (1/n) sum 1/2 (y_i - x_i'theta)^2 - (lambda/2) theta' W theta.
/// W absent means the identity.
struct RegressionProblem {
    RegressionProblem(DesignMatrix X_, Vector y_, double lambda_,
                      std::optional<Matrix> W_ = std::nullopt)
        : X(std::move(X_)), y(std::move(y_)), lambda(lambda_), W(std::move(W_)) {
        if (y.size() != X.rows()) throw InvalidArgument("RegressionProblem: len(y) != rows(X)");
        if (lambda < 0.0) throw InvalidArgument("RegressionProblem: lambda must be >= 0");
        if (W && (W->rows() != X.cols() || W->cols() != X.cols()))
            throw InvalidArgument("RegressionProblem: weight matrix shape mismatch");
    }

    DesignMatrix X;
    Vector y;
    double lambda;
    std::optional<Matrix> W;

    Matrix weight_or_identity() const {
        return W ? *W : Matrix(Matrix::Identity(X.cols(), X.cols()));
    }
};

/// Raised when a solve is requested outside the spectral safety region.
class UnsafeLambda : public Error {
public:
    UnsafeLambda(const std::string& what, SafetyBound bound, double lambda)
        : Error(what), bound(bound), attempted_lambda(lambda) {}
    SafetyBound bound;
    double attempted_lambda;
};

/// Step size and rate certificate for gradient descent on the shifted
/// quadratic, from the exact extreme eigenvalues of the Hessian.
struct GDCertificate {
    double L = 0.0;         // sigma_max(H)
    double mu = 0.0;        // sigma_min(H)
    double eta_star = 0.0;  // 2 / (L + mu)
    double rho_star = 0.0;  // (kappa - 1) / (kappa + 1)
};

struct GdResult {
    Vector theta;
    int iterations = 0;
    std::vector<double> error_trace;  // distance to the closed-form solution per iteration
};

/// sigma_min(Sigma - lambda W); positive iff the problem is strongly convex.
double hessian_min_eig(const Matrix& sigma_hat, double lambda, const Matrix& W);

Vector closed_form_solve(const RegressionProblem& problem);

std::pair<double, Vector> objective_and_gradient(const RegressionProblem& problem,
                                                 const Vector& theta);

GDCertificate gd_certificate(const Matrix& sigma_hat, double lambda, const Matrix& W);

GdResult gd_solve(const RegressionProblem& problem, double eta, int max_iters, double tolerance,
                  std::optional<Vector> theta0 = std::nullopt);

/// Objective values along t * u for the bottom eigenvector u of the sample
/// covariance. Deliberately has no safety gate: it is the probe used to
/// demonstrate divergence past the spectral boundary.
std::vector<double> divergence_probe(const RegressionProblem& problem,
                                     const std::vector<double>& scales);

}  // namespace antireg
