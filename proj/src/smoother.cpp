#include "antireg/smoother.hpp"

#include <cmath>

namespace antireg {

namespace {

Vector ones_like(const Vector& v) { return Vector::Ones(v.size()); }

struct ModeSet {
    Vector sigma;
    Vector w;
};

// Drop modes below the rank cutoff and check the per-mode safety condition
// lambda * w_j < sigma_j.
ModeSet active_modes(const Vector& spectrum, double lambda, const std::optional<Vector>& weights) {
    if (spectrum.size() == 0) throw InvalidArgument("dof: empty spectrum");
    Vector w = weights ? *weights : ones_like(spectrum);
    if (w.size() != spectrum.size()) throw InvalidArgument("dof: weights length mismatch");

    const double sigma1 = spectrum.maxCoeff();
    std::vector<double> sig, wt;
    for (Index j = 0; j < spectrum.size(); ++j) {
        if (spectrum(j) > kRankTolerance * sigma1) {
            sig.push_back(spectrum(j));
            wt.push_back(w(j));
        }
    }
    ModeSet m;
    m.sigma = Eigen::Map<Vector>(sig.data(), static_cast<Index>(sig.size()));
    m.w = Eigen::Map<Vector>(wt.data(), static_cast<Index>(wt.size()));

    for (Index j = 0; j < m.sigma.size(); ++j) {
        if (lambda * m.w(j) >= m.sigma(j)) {
            SafetyBound bound;
            bound.raw = (m.sigma.array() / m.w.array().max(1e-300)).minCoeff();
            bound.slack = 0.0;
            bound.clipped = bound.raw;
            throw UnsafeLambda("spectral formula evaluated outside the safety region", bound,
                               lambda);
        }
    }
    return m;
}

}  // namespace

Matrix smoother_matrix(const DesignMatrix& X, double lambda, std::optional<Matrix> W) {
    const Matrix sigma_hat = sample_covariance(X);
    const Matrix Wm = W ? *W : Matrix(Matrix::Identity(X.cols(), X.cols()));
    if (Wm.rows() != X.cols() || Wm.cols() != X.cols())
        throw InvalidArgument("smoother_matrix: weight matrix shape mismatch");
    if (hessian_min_eig(sigma_hat, lambda, Wm) <= 0.0) {
        SafetyBound bound;
        try {
            bound = safe_lambda_max(sigma_hat, Wm, kDefaultSafetySlack);
        } catch (const Error&) {
        }
        throw UnsafeLambda("smoother_matrix: lambda outside the safety region", bound, lambda);
    }
    const Matrix& Xv = X.values();
    const double n = static_cast<double>(X.rows());
    Matrix A = Xv.transpose() * Xv - n * lambda * Wm;
    Matrix S = Xv * A.llt().solve(Xv.transpose());
    return 0.5 * (S + S.transpose());
}

double dof(const Vector& spectrum, double lambda, std::optional<Vector> weights) {
    ModeSet m = active_modes(spectrum, lambda, weights);
    return (m.sigma.array() / (m.sigma.array() - lambda * m.w.array())).sum();
}

double dof_derivative(const Vector& spectrum, double lambda, std::optional<Vector> weights) {
    ModeSet m = active_modes(spectrum, lambda, weights);
    Eigen::ArrayXd denom = m.sigma.array() - lambda * m.w.array();
    return (m.sigma.array() * m.w.array() / (denom * denom)).sum();
}

double variance_trace(const Vector& spectrum, double lambda, std::optional<Vector> weights) {
    ModeSet m = active_modes(spectrum, lambda, weights);
    Eigen::ArrayXd ratio = m.sigma.array() / (m.sigma.array() - lambda * m.w.array());
    return (ratio * ratio).sum();
}

namespace {

// Eigenvalues of A = Sigma^{-1/2} W Sigma^{-1/2}, the whitened weight matrix.
Vector whitened_eigs(const Matrix& sigma_hat, const Matrix& W, double lambda) {
    SpectrumView s = sym_eigendecomposition(sigma_hat);
    if (s.eigenvalues(s.eigenvalues.size() - 1) <= 0.0)
        throw InvalidArgument("whitened smoother: covariance must be positive definite");
    Vector inv_sqrt = s.eigenvalues.cwiseSqrt().cwiseInverse();
    Matrix root = s.eigenvectors * inv_sqrt.asDiagonal() * s.eigenvectors.transpose();
    Matrix A = root * W * root;
    SpectrumView sa = sym_eigendecomposition(0.5 * (A + A.transpose()));
    if (lambda * sa.eigenvalues(0) >= 1.0) {
        SafetyBound bound;
        bound.raw = 1.0 / sa.eigenvalues(0);
        bound.slack = 0.0;
        bound.clipped = bound.raw;
        throw UnsafeLambda("whitened smoother: lambda outside the safety region", bound, lambda);
    }
    return sa.eigenvalues;
}

}  // namespace

double dof_matrix(const Matrix& sigma_hat, const Matrix& W, double lambda) {
    Vector a = whitened_eigs(sigma_hat, W, lambda);
    return (1.0 / (1.0 - lambda * a.array())).sum();
}

double variance_trace_matrix(const Matrix& sigma_hat, const Matrix& W, double lambda) {
    Vector a = whitened_eigs(sigma_hat, W, lambda);
    Eigen::ArrayXd h = 1.0 / (1.0 - lambda * a.array());
    return (h * h).sum();
}

double optimism_gap(const NoiseModel& noise, Index n, const Matrix& S) {
    if (S.rows() != n || S.cols() != n) throw InvalidArgument("optimism_gap: shape mismatch");
    if (noise.kind == NoiseKind::Homoskedastic)
        return 2.0 * noise.tau2 * S.trace() / static_cast<double>(n);
    if (noise.per_sample_tau2.size() != n)
        throw InvalidArgument("optimism_gap: per-sample variance length mismatch");
    return 2.0 * noise.per_sample_tau2.dot(S.diagonal()) / static_cast<double>(n);
}

bool underfit_improvement_check(double delta_train_risk, double delta_tr, double tau2, Index n) {
    if (delta_train_risk < 0.0 || delta_tr < 0.0)
        throw InvalidArgument("underfit_improvement_check: deltas must be nonnegative");
    return delta_train_risk > 2.0 * tau2 * delta_tr / static_cast<double>(n);
}

double train_risk_proxy(const Vector& y, const Vector& fitted, double tau2) {
    if (y.size() != fitted.size()) throw InvalidArgument("train_risk_proxy: length mismatch");
    return (y - fitted).squaredNorm() / static_cast<double>(y.size()) - tau2;
}

Vector kernel_ar_solve(const KernelMatrix& kernel, const Vector& y, double lambda) {
    const Matrix& K = kernel.K;
    if (y.size() != K.rows()) throw InvalidArgument("kernel_ar_solve: length mismatch");
    SpectrumView s = sym_eigendecomposition(K);
    const double sigma_min = s.eigenvalues(s.eigenvalues.size() - 1);
    if (lambda >= sigma_min) {
        SafetyBound bound;
        bound.raw = sigma_min;
        bound.slack = 0.0;
        bound.clipped = sigma_min;
        throw UnsafeLambda("kernel_ar_solve: lambda >= sigma_min(K)", bound, lambda);
    }
    Vector shifted = s.eigenvalues.array() - lambda;
    return s.eigenvectors * shifted.cwiseInverse().asDiagonal() *
           (s.eigenvectors.transpose() * y);
}

SmootherReport smoother_report(const Vector& spectrum, double lambda, double tau2, Index n,
                               std::optional<Vector> weights) {
    SmootherReport report;
    try {
        report.dof = dof(spectrum, lambda, weights);
        report.dof_derivative = dof_derivative(spectrum, lambda, weights);
        report.variance_trace = variance_trace(spectrum, lambda, weights);
        report.optimism_gap = 2.0 * tau2 * report.dof / static_cast<double>(n);
        report.safe = true;
    } catch (const UnsafeLambda&) {
        report.safe = false;
    }
    return report;
}

}  // namespace antireg
