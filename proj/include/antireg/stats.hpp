#pragma once

#include <string>
#include <vector>

#include "antireg/types.hpp"

namespace antireg {

/// Seed-matched (treatment, baseline) value pairs for one metric.
struct PairedSample {
    std::string metric;
    std::vector<double> treatment;
    std::vector<double> baseline;
    std::vector<long> seeds;

    std::vector<double> differences() const;
};

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    bool degenerate = false;  // all differences equal; p reported as 1
};

/// Two-sided paired t-test with n-1 degrees of freedom.
TTestResult paired_t_test(const PairedSample& sample);

struct WilcoxonResult {
    double w_plus = 0.0;
    double p = 1.0;
    bool exact = true;  // exact sign-assignment distribution for n <= 25
};

/// Two-sided Wilcoxon signed-rank test. Zeros dropped, ties mid-ranked;
/// exact distribution up to n = 25 and a continuity-corrected normal
/// approximation above.
WilcoxonResult wilcoxon_signed_rank(const PairedSample& sample);

/// Holm-Bonferroni step-down adjustment within one comparison block.
std::vector<double> holm_bonferroni(const std::vector<double>& p_values);

struct Ci95 {
    double mean = 0.0;
    double standard_error = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

/// t-based 95% confidence interval for the mean of per-seed values.
Ci95 ci95(const std::vector<double>& values);

/// Student-t distribution helpers (two-sided tail and 97.5% quantile).
double student_t_two_sided_p(double t, int dof);
double student_t_quantile_975(int dof);

}  // namespace antireg
