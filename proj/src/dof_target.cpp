#include "antireg/dof_target.hpp"

#include <algorithm>
#include <cmath>

namespace antireg {

namespace {

struct ActiveSpectrum {
    Vector sigma;
    Vector w;
    double safe_bound = 0.0;  // raw generalized bound min_j sigma_j / w_j
    Index r = 0;
};

ActiveSpectrum prepare(const DofTarget& target) {
    if (target.spectrum.size() == 0) throw InvalidArgument("solve_dof_target: empty spectrum");
    if (target.n < 1) throw InvalidArgument("solve_dof_target: n must be >= 1");
    if (target.epsilon <= 0.0 || target.epsilon >= 1.0)
        throw InvalidArgument("solve_dof_target: epsilon must lie in (0, 1)");
    if (target.kappa <= 0.0) throw InvalidArgument("solve_dof_target: kappa must be > 0");

    Vector w = target.weights ? *target.weights : Vector(Vector::Ones(target.spectrum.size()));
    if (w.size() != target.spectrum.size())
        throw InvalidArgument("solve_dof_target: weights length mismatch");

    const double sigma1 = target.spectrum.maxCoeff();
    std::vector<double> sig, wt;
    for (Index j = 0; j < target.spectrum.size(); ++j) {
        if (target.spectrum(j) > kRankTolerance * sigma1) {
            sig.push_back(target.spectrum(j));
            wt.push_back(w(j));
        }
    }
    ActiveSpectrum a;
    a.sigma = Eigen::Map<Vector>(sig.data(), static_cast<Index>(sig.size()));
    a.w = Eigen::Map<Vector>(wt.data(), static_cast<Index>(wt.size()));
    a.r = a.sigma.size();
    a.safe_bound = (a.sigma.array() / a.w.array().max(1e-300)).minCoeff();
    return a;
}

double trace_at(const ActiveSpectrum& a, double lambda) {
    return (a.sigma.array() / (a.sigma.array() - lambda * a.w.array())).sum();
}

double trace_derivative_at(const ActiveSpectrum& a, double lambda) {
    Eigen::ArrayXd denom = a.sigma.array() - lambda * a.w.array();
    return (a.sigma.array() * a.w.array() / (denom * denom)).sum();
}

}  // namespace

double initial_guess(const DofTarget& target) {
    ActiveSpectrum a = prepare(target);
    const double inv_sum = a.sigma.cwiseInverse().sum();
    double guess =
        (target.kappa * static_cast<double>(target.n) - static_cast<double>(a.r)) / inv_sum;
    guess = std::max(0.0, guess);
    return std::min(guess, (1.0 - target.epsilon) * a.safe_bound);
}

DofSolveResult solve_dof_target(const DofTarget& target, const DofSolveOptions& options) {
    ActiveSpectrum a = prepare(target);
    const double n = static_cast<double>(target.n);
    const double goal = target.kappa * n;

    DofSolveResult result;
    if (goal <= static_cast<double>(a.r)) {
        result.lambda = 0.0;
        result.residual = std::abs(trace_at(a, 0.0) / n - target.kappa);
        result.target_below_achievable = goal < static_cast<double>(a.r);
        result.method_trace.push_back(result.target_below_achievable
                                          ? "target below achievable range"
                                          : "target equals rank: lambda = 0");
        return result;
    }

    double lo = 0.0;  // g(lo) <= 0 <= g(hi) is maintained throughout
    double hi = (1.0 - target.epsilon) * a.safe_bound;
    if (trace_at(a, hi) - goal < 0.0)
        throw TargetUnreachable(
            "solve_dof_target: kappa n exceeds the dof at the slack boundary; "
            "loosen epsilon or reduce kappa");

    const bool in_log_mode = options.log_scale;
    if (in_log_mode) lo = 1e-300;  // log bisection needs a positive lower endpoint

    double lambda = std::clamp(initial_guess(target), lo, hi);
    int newton_escapes = 0;
    bool newton_alive = !options.log_scale;

    for (int it = 1; it <= options.max_iters; ++it) {
        double g = trace_at(a, lambda) - goal;
        result.iterations = it;
        result.residual = std::abs(g) / n;
        if (result.residual <= options.tolerance) {
            result.lambda = lambda;
            return result;
        }

        // Maintain the monotone bracket.
        if (g < 0.0)
            lo = lambda;
        else
            hi = lambda;

        double next;
        if (newton_alive) {
            double step = g / trace_derivative_at(a, lambda);
            double eta = 1.0;
            next = lambda - eta * step;
            // Damping: halve until the iterate is back inside the safe region.
            while (next > (1.0 - target.epsilon) * a.safe_bound && eta > 1e-8) {
                eta *= 0.5;
                next = lambda - eta * step;
            }
            if (next < lo || next > hi) {
                ++newton_escapes;
                result.method_trace.push_back("newton escaped bracket");
                if (newton_escapes >= 2) {
                    newton_alive = false;
                    result.method_trace.push_back("fallback to bisection");
                }
                next = 0.5 * (lo + hi);
                result.method_trace.push_back("bisect");
            } else {
                result.method_trace.push_back("newton");
            }
        } else if (in_log_mode && lo > 0.0) {
            next = std::sqrt(lo * hi);
            result.method_trace.push_back("log-bisect");
        } else {
            next = 0.5 * (lo + hi);
            result.method_trace.push_back("bisect");
        }
        lambda = next;
    }
    throw MaxIters("solve_dof_target: iteration budget exhausted");
}

}  // namespace antireg
