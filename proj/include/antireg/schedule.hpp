#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "antireg/types.hpp"

namespace antireg {

enum class TaskKind { Regression, Classification };
enum class RewardKind { NegativeL2, Weighted, BoundedMargin };
enum class Conservatism { Default, Conservative };
enum class StopAction { Continue, AccelerateAlpha, DisableReward };
enum class GateAction { Ok, DecayNow };
enum class StopResponse { Accelerate, Disable };

enum class MarginRewardKind { CappedHinge, SaturatedExp, SigmoidType };

/// Bounded Lipschitz reward of the classification margin.
struct MarginRewardSpec {
    MarginRewardKind kind = MarginRewardKind::CappedHinge;
    double phi_max = 1.0;
    double gamma = 1.0;  // scale for the exponential / sigmoid kinds
};

/// Operating bands for the runtime triggering rule plus the consecutive-epoch
/// count that arms it.
struct SafetyZone {
    std::pair<double, double> clip_band{0.05, 0.40};
    std::pair<double, double> rho_band{0.9, 1.3};
    int trigger_epochs = 2;
    double ece_degradation = 0.02;

    static SafetyZone defaults_for(TaskKind task) {
        SafetyZone z;
        if (task == TaskKind::Classification) {
            z.clip_band = {0.10, 0.50};
            z.rho_band = {0.8, 1.1};
        }
        return z;
    }
};

/// The full intervention policy for one training run.
struct ARConfig {
    double lambda0 = 0.0;
    Index n0 = 0;  // reference sample count; 0 means "anchor at the run's own size"
    double alpha = 1.0;
    double epsilon = 0.05;
    TaskKind task = TaskKind::Regression;
    RewardKind reward = RewardKind::NegativeL2;
    MarginRewardSpec phi;
    std::vector<double> trust_radii;  // per linear layer
    double clip_threshold = 1.0;
    double logit_clip = 30.0;

    SafetyZone zone = SafetyZone{};
    bool use_trigger_rule = true;
    bool use_stop_rule = true;  // reproduction configs turn this off
    StopResponse stop_response = StopResponse::Accelerate;
    bool cumulative_epoch_decay = true;  // n advances with samples seen across epochs

    static ARConfig for_task(TaskKind task) {
        ARConfig c;
        c.task = task;
        c.alpha = task == TaskKind::Regression ? 1.0 : 0.5;
        c.zone = SafetyZone::defaults_for(task);
        return c;
    }
};

/// lambda0 * (n0 / n)^alpha, anchored so lambda(n0) = lambda0 exactly.
double power_decay(const ARConfig& config, Index n);

double alpha_recommendation(TaskKind task, Conservatism conservatism);

struct EpochSafetyStats {
    double r_clip = 0.0;
    double rho = 1.0;
};

/// Multiplier in {0.5, 1.0, 1.5} layered multiplicatively onto the scheduled
/// lambda. Halve when either metric sat out of band for the configured number
/// of consecutive epochs; mildly raise when clipping is rare and validation
/// improves; hold otherwise.
double trigger_update(const SafetyZone& zone, const std::vector<EpochSafetyStats>& history,
                      bool validation_improving);

StopAction stop_rule(double rho, double r_clip, double delta_ece, TaskKind task,
                     StopResponse response = StopResponse::Accelerate);

/// Effective-curvature floor check: decay immediately once
/// mu - lambda * alpha_R falls below eta_mu * mu.
GateAction stability_gate(double mu, double alpha_R, double lambda, double eta_mu);

/// Per-run schedule state owned by a single training loop. Combines the decay
/// with the cumulative trigger multipliers; a halving is not undone by
/// re-entering the band.
class ScheduleState {
public:
    ScheduleState(ARConfig config, Index run_train_size);

    /// lambda for the given 1-based epoch under the current multiplier.
    double lambda_for_epoch(int epoch) const;

    /// Feed one epoch's diagnostics; updates the trigger multiplier.
    void observe_epoch(const EpochSafetyStats& stats, bool validation_improving);

    double multiplier() const { return multiplier_; }
    const ARConfig& config() const { return config_; }
    Index samples_at_epoch(int epoch) const;

private:
    ARConfig config_;
    Index run_train_size_;
    double multiplier_ = 1.0;
    std::vector<EpochSafetyStats> history_;
};

}  // namespace antireg
