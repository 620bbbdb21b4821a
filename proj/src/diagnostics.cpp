#include "antireg/diagnostics.hpp"

#include <cmath>

#include "antireg/errors.hpp"

namespace antireg {

double output_scale_ratio(const Matrix& Z_ar, const Matrix& Z_base) {
    if (Z_ar.rows() != Z_base.rows() || Z_ar.cols() != Z_base.cols())
        throw InvalidArgument("output_scale_ratio: shape mismatch");
    const double base = Z_base.norm();
    if (base == 0.0) throw ZeroBaseline("output_scale_ratio: baseline outputs are all zero");
    return Z_ar.norm() / base;
}

std::pair<double, double> clip_and_proj_rates(const std::vector<bool>& clip_flags,
                                              const std::vector<bool>& proj_flags) {
    if (clip_flags.empty() || clip_flags.size() != proj_flags.size())
        throw InvalidArgument("clip_and_proj_rates: need matched, nonempty flag lists");
    double clipped = 0.0, projected = 0.0;
    for (bool f : clip_flags) clipped += f ? 1.0 : 0.0;
    for (bool f : proj_flags) projected += f ? 1.0 : 0.0;
    const double total = static_cast<double>(clip_flags.size());
    return {clipped / total, projected / total};
}

double ece(const std::vector<double>& confidences, const std::vector<int>& predicted,
           const std::vector<int>& actual, int bin_count) {
    const std::size_t n = confidences.size();
    if (n == 0 || predicted.size() != n || actual.size() != n)
        throw InvalidArgument("ece: need matched, nonempty inputs");
    if (bin_count < 1) throw InvalidArgument("ece: bin count must be positive");

    std::vector<double> sum_conf(bin_count, 0.0), sum_acc(bin_count, 0.0);
    std::vector<long> count(bin_count, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = confidences[i];
        if (c < 0.0 || c > 1.0) throw InvalidArgument("ece: confidence outside [0, 1]");
        int b = std::min(bin_count - 1, static_cast<int>(c * bin_count));
        sum_conf[b] += c;
        sum_acc[b] += predicted[i] == actual[i] ? 1.0 : 0.0;
        ++count[b];
    }
    double total = 0.0;
    for (int b = 0; b < bin_count; ++b) {
        if (count[b] == 0) continue;
        const double nb = static_cast<double>(count[b]);
        total += (nb / static_cast<double>(n)) * std::abs(sum_acc[b] / nb - sum_conf[b] / nb);
    }
    return total;
}

double stability_bound(double L_loss, double G, Index n, double mu, double alpha_R,
                       double lambda) {
    const double mu_eff = mu - lambda * alpha_R;
    if (mu_eff <= 0.0)
        throw DegenerateCurvature("stability_bound: effective curvature is nonpositive");
    return 2.0 * L_loss * G / (static_cast<double>(n) * mu_eff);
}

}  // namespace antireg
