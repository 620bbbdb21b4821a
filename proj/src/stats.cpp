#include "antireg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "antireg/errors.hpp"

namespace antireg {

std::vector<double> PairedSample::differences() const {
    if (treatment.size() != baseline.size() || treatment.empty())
        throw InvalidArgument("PairedSample: treatment/baseline must be matched and nonempty");
    if (!seeds.empty() && seeds.size() != treatment.size())
        throw InvalidArgument("PairedSample: seed list length mismatch");
    std::vector<double> d(treatment.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = treatment[i] - baseline[i];
    return d;
}

double student_t_two_sided_p(double t, int dof) {
    boost::math::students_t dist(static_cast<double>(dof));
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double student_t_quantile_975(int dof) {
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(dist, 0.975);
}

TTestResult paired_t_test(const PairedSample& sample) {
    std::vector<double> d = sample.differences();
    const std::size_t n = d.size();
    if (n < 2) throw InvalidArgument("paired_t_test: need at least two pairs");

    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    TTestResult result;
    if (sd == 0.0) {
        result.degenerate = true;
        result.p = 1.0;
        result.t = 0.0;
        return result;
    }
    result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    result.p = student_t_two_sided_p(result.t, static_cast<int>(n) - 1);
    return result;
}

namespace {

// Mid-ranks of |d|, doubled so that tied half-ranks stay integral.
std::vector<long> doubled_ranks(const std::vector<double>& abs_d) {
    const std::size_t n = abs_d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_d[a] < abs_d[b]; });

    std::vector<long> ranks2(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_d[order[j + 1]] == abs_d[order[i]]) ++j;
        // Mid-rank of positions i..j (1-based), doubled: (i+1 + j+1).
        long doubled = static_cast<long>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) ranks2[order[k]] = doubled;
        i = j + 1;
    }
    return ranks2;
}

// Exact distribution of doubled W+ over all sign assignments, by convolution.
std::vector<double> exact_wplus_distribution(const std::vector<long>& ranks2) {
    long total = std::accumulate(ranks2.begin(), ranks2.end(), 0L);
    std::vector<double> prob(static_cast<std::size_t>(total) + 1, 0.0);
    prob[0] = 1.0;
    long reach = 0;
    for (long r : ranks2) {
        for (long s = reach; s >= 0; --s) {
            double half = 0.5 * prob[static_cast<std::size_t>(s)];
            prob[static_cast<std::size_t>(s)] = half;
            prob[static_cast<std::size_t>(s + r)] += half;
        }
        reach += r;
    }
    return prob;
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(const PairedSample& sample) {
    std::vector<double> d = sample.differences();
    std::vector<double> abs_d;
    std::vector<bool> positive;
    for (double v : d) {
        if (v == 0.0) continue;  // zeros dropped
        abs_d.push_back(std::abs(v));
        positive.push_back(v > 0.0);
    }
    if (abs_d.empty()) throw AllZero("wilcoxon_signed_rank: no nonzero differences");

    const std::size_t n = abs_d.size();
    std::vector<long> ranks2 = doubled_ranks(abs_d);
    long w_plus2 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (positive[i]) w_plus2 += ranks2[i];

    WilcoxonResult result;
    result.w_plus = 0.5 * static_cast<double>(w_plus2);

    if (n <= 25) {
        std::vector<double> dist = exact_wplus_distribution(ranks2);
        double lower = 0.0, upper = 0.0;
        for (long s = 0; s <= w_plus2; ++s) lower += dist[static_cast<std::size_t>(s)];
        for (std::size_t s = static_cast<std::size_t>(w_plus2); s < dist.size(); ++s)
            upper += dist[s];
        result.p = std::min(1.0, 2.0 * std::min(lower, upper));
        result.exact = true;
        return result;
    }

    // Normal approximation with continuity correction and tie correction.
    const double nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    double tie_term = 0.0;
    {
        std::vector<double> sorted = abs_d;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    const double w = result.w_plus;
    const double z = (std::abs(w - mean) - 0.5) / std::sqrt(var);
    boost::math::normal norm;
    result.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(norm, z)));
    result.exact = false;
    return result;
}

std::vector<double> holm_bonferroni(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (p < 0.0 || p > 1.0) throw InvalidArgument("holm_bonferroni: p outside [0, 1]");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    std::vector<double> adjusted(m, 0.0);
    double running = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double scaled = std::min(1.0, static_cast<double>(m - i) * p_values[order[i]]);
        running = std::max(running, scaled);
        adjusted[order[i]] = running;
    }
    return adjusted;
}

Ci95 ci95(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw InvalidArgument("ci95: need at least two values");
    Ci95 out;
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / static_cast<double>(n - 1)) /
                         std::sqrt(static_cast<double>(n));
    const double t = student_t_quantile_975(static_cast<int>(n) - 1);
    out.lower = out.mean - t * out.standard_error;
    out.upper = out.mean + t * out.standard_error;
    return out;
}

}  // namespace antireg
