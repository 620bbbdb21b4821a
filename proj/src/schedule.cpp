#include "antireg/schedule.hpp"

#include <cmath>

namespace antireg {

double power_decay(const ARConfig& config, Index n) {
    if (n < 1) throw InvalidArgument("power_decay: n must be >= 1");
    if (config.n0 < 1) throw InvalidArgument("power_decay: config.n0 must be set");
    return config.lambda0 *
           std::pow(static_cast<double>(config.n0) / static_cast<double>(n), config.alpha);
}

double alpha_recommendation(TaskKind task, Conservatism conservatism) {
    if (task == TaskKind::Regression)
        return conservatism == Conservatism::Default ? 1.0 : 1.5;
    return conservatism == Conservatism::Default ? 0.5 : 0.75;
}

namespace {

bool out_of_band(double value, const std::pair<double, double>& band) {
    return value < band.first || value > band.second;
}

}  // namespace

double trigger_update(const SafetyZone& zone, const std::vector<EpochSafetyStats>& history,
                      bool validation_improving) {
    if (history.empty()) throw InvalidArgument("trigger_update: empty history");

    // Count the most recent run of consecutive epochs where a metric was out
    // of its band.
    int clip_run = 0;
    int rho_run = 0;
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        if (out_of_band(it->r_clip, zone.clip_band))
            ++clip_run;
        else
            break;
    }
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        if (out_of_band(it->rho, zone.rho_band))
            ++rho_run;
        else
            break;
    }
    if (clip_run >= zone.trigger_epochs || rho_run >= zone.trigger_epochs) return 0.5;
    if (history.back().r_clip < 0.10 && validation_improving) return 1.5;
    return 1.0;
}

StopAction stop_rule(double rho, double r_clip, double delta_ece, TaskKind task,
                     StopResponse response) {
    bool violated = rho > 1.3 || r_clip > 0.6;
    if (task == TaskKind::Classification && delta_ece > 0.02) violated = true;
    if (!violated) return StopAction::Continue;
    return response == StopResponse::Accelerate ? StopAction::AccelerateAlpha
                                                : StopAction::DisableReward;
}

GateAction stability_gate(double mu, double alpha_R, double lambda, double eta_mu) {
    if (mu <= 0.0) throw InvalidArgument("stability_gate: mu must be positive");
    if (alpha_R < 0.0) throw InvalidArgument("stability_gate: alpha_R must be nonnegative");
    if (eta_mu < 0.1 || eta_mu > 0.5)
        throw InvalidArgument("stability_gate: eta_mu must lie in [0.1, 0.5]");
    return (mu - lambda * alpha_R < eta_mu * mu) ? GateAction::DecayNow : GateAction::Ok;
}

ScheduleState::ScheduleState(ARConfig config, Index run_train_size)
    : config_(std::move(config)), run_train_size_(run_train_size) {
    if (run_train_size_ < 1) throw InvalidArgument("ScheduleState: run size must be >= 1");
    if (config_.n0 < 1) config_.n0 = run_train_size_;
}

Index ScheduleState::samples_at_epoch(int epoch) const {
    if (epoch < 1) throw InvalidArgument("ScheduleState: epochs are 1-based");
    return config_.cumulative_epoch_decay ? run_train_size_ * static_cast<Index>(epoch)
                                          : run_train_size_;
}

double ScheduleState::lambda_for_epoch(int epoch) const {
    return power_decay(config_, samples_at_epoch(epoch)) * multiplier_;
}

void ScheduleState::observe_epoch(const EpochSafetyStats& stats, bool validation_improving) {
    history_.push_back(stats);
    if (!config_.use_trigger_rule) return;
    multiplier_ *= trigger_update(config_.zone, history_, validation_improving);
}

}  // namespace antireg
