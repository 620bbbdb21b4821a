#pragma once

#include <optional>

#include "antireg/regression.hpp"
#include "antireg/spectral.hpp"
#include "antireg/types.hpp"

namespace antireg {

enum class NoiseKind { Homoskedastic, Heteroskedastic };

/// Observation noise description. Homoskedastic carries a single variance,
/// heteroskedastic one variance per sample.
struct NoiseModel {
    static NoiseModel homoskedastic(double tau2) {
        if (tau2 <= 0.0) throw InvalidArgument("NoiseModel: variance must be positive");
        NoiseModel m;
        m.kind = NoiseKind::Homoskedastic;
        m.tau2 = tau2;
        return m;
    }
    static NoiseModel heteroskedastic(Vector per_sample_tau2) {
        if (per_sample_tau2.size() == 0 || per_sample_tau2.minCoeff() <= 0.0)
            throw InvalidArgument("NoiseModel: variances must be positive");
        NoiseModel m;
        m.kind = NoiseKind::Heteroskedastic;
        m.per_sample_tau2 = std::move(per_sample_tau2);
        return m;
    }

    NoiseKind kind = NoiseKind::Homoskedastic;
    double tau2 = 1.0;
    Vector per_sample_tau2;
};

enum class KernelSource { Explicit, EmpiricalTangent };

/// Symmetric PSD n x n kernel, validated at construction.
struct KernelMatrix {
    KernelMatrix(Matrix K_, KernelSource source_ = KernelSource::Explicit)
        : K(std::move(K_)), source(source_) {
        if (K.rows() != K.cols()) throw InvalidArgument("KernelMatrix: not square");
        const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
        if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw NonSymmetric("KernelMatrix: asymmetry exceeds tolerance");
        SpectrumView s = sym_eigendecomposition(K);
        const double sigma_max = s.eigenvalues(0);
        if (s.eigenvalues(s.eigenvalues.size() - 1) < -1e-10 * std::max(1.0, sigma_max))
            throw InvalidArgument("KernelMatrix: not PSD to tolerance");
    }

    Matrix K;
    KernelSource source;
};

/// Complexity and risk summary of the smoother at a given lambda.
struct SmootherReport {
    double dof = 0.0;
    double dof_derivative = 0.0;
    double variance_trace = 0.0;
    double optimism_gap = 0.0;
    bool safe = false;
};

/// S = X (X'X - n lambda W)^{-1} X'. Gated by the spectral safety condition.
Matrix smoother_matrix(const DesignMatrix& X, double lambda,
                       std::optional<Matrix> W = std::nullopt);

/// Spectral degrees of freedom: sum_j sigma_j / (sigma_j - lambda w_j) over
/// modes above the rank cutoff. Weights default to one.
double dof(const Vector& spectrum, double lambda,
           std::optional<Vector> weights = std::nullopt);

/// d/dlambda of dof: sum_j sigma_j w_j / (sigma_j - lambda w_j)^2.
double dof_derivative(const Vector& spectrum, double lambda,
                      std::optional<Vector> weights = std::nullopt);

/// tr(S^2) = sum_j sigma_j^2 / (sigma_j - lambda w_j)^2.
double variance_trace(const Vector& spectrum, double lambda,
                      std::optional<Vector> weights = std::nullopt);

/// Matrix-path degrees of freedom for weight matrices that need not commute
/// with the covariance, via tr((I - lambda A)^{-1}) with
/// A = Sigma^{-1/2} W Sigma^{-1/2}. Requires Sigma positive definite.
double dof_matrix(const Matrix& sigma_hat, const Matrix& W, double lambda);
double variance_trace_matrix(const Matrix& sigma_hat, const Matrix& W, double lambda);

/// The expected test-minus-train gap contributed by fitting flexibility:
/// 2 tau^2 tr(S)/n, or (2/n) sum_i tau_i^2 S_ii for per-sample variances.
double optimism_gap(const NoiseModel& noise, Index n, const Matrix& S);

/// True iff the observed training-risk drop strictly beats the complexity
/// price (2 tau^2 / n) * delta_tr.
bool underfit_improvement_check(double delta_train_risk, double delta_tr, double tau2, Index n);

/// Training-risk proxy (1/n)||y - fhat||^2 - tau^2 for a known noise level.
double train_risk_proxy(const Vector& y, const Vector& fitted, double tau2);

/// (K - lambda I)^{-1} y, the kernel-regime solution. Gated by
/// lambda < sigma_min(K).
Vector kernel_ar_solve(const KernelMatrix& kernel, const Vector& y, double lambda);

SmootherReport smoother_report(const Vector& spectrum, double lambda, double tau2, Index n,
                               std::optional<Vector> weights = std::nullopt);

}  // namespace antireg
