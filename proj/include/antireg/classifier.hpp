#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "antireg/net.hpp"
#include "antireg/schedule.hpp"
#include "antireg/types.hpp"

namespace antireg {

/// One batch of supervised data; `labels` is used for classification,
/// `targets` for regression.
struct LabeledBatch {
    Matrix X;
    Eigen::VectorXi labels;
    Vector targets;
    TaskKind task = TaskKind::Regression;
    int num_classes = 0;

    Index size() const { return X.rows(); }
};

/// Softmax cross-entropy against a single label, computed through a shifted
/// log-sum-exp so confident logits do not overflow.
double cross_entropy(const Vector& logits, int label);

/// Correct-class logit minus the best competing logit.
double margin(const Vector& logits, int label);

double phi(const MarginRewardSpec& spec, double m);
double phi_prime(const MarginRewardSpec& spec, double m);
double phi_lipschitz(const MarginRewardSpec& spec);

Matrix clip_logits(const Matrix& logits, double M);

/// Rescale to a global norm of at most tau; returns whether scaling applied.
bool clip_gradient(NetGrads& grads, double tau);

/// Radial projection of each layer's weight matrix onto its Frobenius ball.
/// Biases are unconstrained. Returns one applied-flag per layer.
std::vector<bool> project_trust_region(ShallowNet& net, const std::vector<double>& radii);

/// How the training objective is assembled for one batch.
struct ObjectivePolicy {
    double lambda = 0.0;
    RewardKind reward = RewardKind::NegativeL2;
    MarginRewardSpec phi;
    bool l2_ablation = false;  // sign-flipped penalty lambda * sum ||W||_F^2
    double logit_clip = 0.0;   // 0 disables
};

double ar_objective(const LabeledBatch& batch, const ShallowNet& net,
                    const ObjectivePolicy& policy);
std::pair<double, NetGrads> ar_objective_with_grad(const LabeledBatch& batch,
                                                   const ShallowNet& net,
                                                   const ObjectivePolicy& policy);

/// q-th percentile of the training margins, linear interpolation between
/// closest ranks.
double gamma_calibrate(std::vector<double> margins, double q);

/// Term-by-term view of the margin generalization bound with all universal
/// constants set to one. A rate diagnostic, not a certified bound.
struct GenBoundTerms {
    double empirical_ce = 0.0;
    double reward_term = 0.0;       // lambda * mean phi(m)
    double margin_complexity = 0.0;  // G / (gamma sqrt(n))
    double reward_complexity = 0.0;  // |lambda| L_phi / sqrt(n)
};

GenBoundTerms gen_bound_terms(const ShallowNet& net, const LabeledBatch& data, double lambda,
                              double gamma, const MarginRewardSpec& spec, double G_estimate,
                              Index n);

struct OptimizerSpec {
    enum class Kind { SGDM, Adam };
    Kind kind = Kind::SGDM;
    double learning_rate = 0.02;
    double momentum = 0.9;  // SGDM
    double beta1 = 0.9;     // Adam moment decays
    double beta2 = 0.999;
    double eps = 1e-8;
    int batch_size = 32;

    static OptimizerSpec sgdm(double lr, double momentum = 0.9, int batch = 32) {
        OptimizerSpec s;
        s.kind = Kind::SGDM;
        s.learning_rate = lr;
        s.momentum = momentum;
        s.batch_size = batch;
        return s;
    }
    static OptimizerSpec adam(double lr = 1e-3, int batch = 32) {
        OptimizerSpec s;
        s.kind = Kind::Adam;
        s.learning_rate = lr;
        s.batch_size = batch;
        return s;
    }
};

/// First-order update rule with per-run state.
class Optimizer {
public:
    Optimizer(const OptimizerSpec& spec, const ShallowNet& net);
    void step(ShallowNet& net, const NetGrads& grads);

private:
    OptimizerSpec spec_;
    NetGrads velocity_;  // SGDM momentum buffer / Adam first moment
    NetGrads second_;    // Adam second moment
    long t_ = 0;
};

struct EpochRecord {
    int epoch = 0;
    double lambda = 0.0;
    double train_loss = 0.0;
    double val_primary = 0.0;  // rmse for regression, accuracy for classification
    double val_ce = 0.0;
    double val_ece = 0.0;
    double clip_rate = 0.0;
    double proj_rate = 0.0;
    double val_znorm = 0.0;        // Frobenius norm of raw validation outputs
    double max_norm_excess = 0.0;  // max over layers of ||W||_F - B
    double mu_eff = 0.0;
};

struct TrainDiagnostics {
    double rho = 1.0;  // set by the harness once a baseline is available
    double r_clip = 0.0;
    double r_proj = 0.0;
    int epochs_used = 0;
    double runtime_s = 0.0;
    double final_lambda = 0.0;
    std::vector<double> mu_eff_trace;
    bool diverged = false;
    double val_znorm = 0.0;
};

struct TrainResult {
    ShallowNet model;  // best validation snapshot
    TrainDiagnostics diagnostics;
    std::vector<EpochRecord> trace;
    Matrix final_val_outputs;  // raw outputs at the last executed epoch
};

struct TrainOptions {
    int max_epochs = 100;
    int patience = 10;
    std::uint64_t seed = 0;
    bool safety_projection = true;
    bool safety_clip = true;
    bool constant_lambda = false;
    bool l2_ablation = false;
    // Per-epoch ||Z||_F of the seed-matched baseline run, for the live rho
    // diagnostic feeding the trigger rule. Empty means rho is reported as 1.
    std::vector<double> baseline_epoch_znorms;
};

/// Minibatch training with the full safety protocol: forward (logit clip for
/// classification), combined objective, backward, gradient clip, optimizer
/// step, trust-region projection. Deterministic given the seed. A non-finite
/// loss aborts the run and sets the divergence flag instead of throwing.
TrainResult train(ShallowNet net, const LabeledBatch& train_data, const LabeledBatch& val_data,
                  const ARConfig& config, const OptimizerSpec& optimizer_spec,
                  const TrainOptions& options);

/// Evaluation helpers shared by the trainer and the harness.
double rmse(const Vector& predictions, const Vector& targets);
double accuracy(const Matrix& logits, const Eigen::VectorXi& labels);
double mean_cross_entropy(const Matrix& logits, const Eigen::VectorXi& labels);

}  // namespace antireg
