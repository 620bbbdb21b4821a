#pragma once

#include <optional>
#include <string>
#include <vector>

#include "antireg/smoother.hpp"
#include "antireg/types.hpp"

namespace antireg {

/// Target for the per-sample degrees of freedom tr(S_lambda)/n = kappa.
struct DofTarget {
    double kappa = 0.0;
    Index n = 0;
    Vector spectrum;
    std::optional<Vector> weights;
    double epsilon = kDefaultSafetySlack;
};

struct DofSolveResult {
    double lambda = 0.0;
    double residual = 0.0;  // |dof(lambda)/n - kappa|
    int iterations = 0;
    std::vector<std::string> method_trace;
    bool target_below_achievable = false;
};

struct DofSolveOptions {
    double tolerance = 1e-10;  // on the per-sample dof residual
    int max_iters = 200;
    bool log_scale = false;  // optional log10-bisection mode for lambda > 0 targets
};

/// First-order initializer (kappa n - r) / sum_j 1/sigma_j, clipped to the
/// safe interval [0, (1 - epsilon) * bound].
double initial_guess(const DofTarget& target);

/// Solve dof(lambda) = kappa n inside the safety region. Damped Newton from
/// the clipped initializer, with a permanent bisection fallback once Newton
/// leaves the bracket twice. Throws TargetUnreachable when kappa n exceeds
/// the dof at the (1 - epsilon) boundary.
DofSolveResult solve_dof_target(const DofTarget& target, const DofSolveOptions& options = {});

}  // namespace antireg
