#pragma once

#include <string>
#include <vector>

#include "antireg/types.hpp"

namespace antireg {

/// Frobenius-norm ratio ||Z_ar||_F / ||Z_base||_F of raw final-epoch outputs
/// between a treated run and its seed-matched baseline.
double output_scale_ratio(const Matrix& Z_ar, const Matrix& Z_base);

/// Fractions of final-epoch minibatches where clipping / projection actually
/// applied.
std::pair<double, double> clip_and_proj_rates(const std::vector<bool>& clip_flags,
                                              const std::vector<bool>& proj_flags);

/// Expected calibration error over equal-width confidence bins.
double ece(const std::vector<double>& confidences, const std::vector<int>& predicted,
           const std::vector<int>& actual, int bin_count = 15);

/// Uniform stability upper bound 2 L G / (n (mu - lambda alpha_R)).
double stability_bound(double L_loss, double G, Index n, double mu, double alpha_R,
                       double lambda);

}  // namespace antireg
