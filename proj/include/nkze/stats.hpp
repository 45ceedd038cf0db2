#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace nkze::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> xs);

/// Inverse CDF of Student's t with `dof` degrees of freedom.
double t_quantile(double p, double dof);

/// t_{0.975, n-1} * s / sqrt(n); empty for n < 2.
std::optional<double> ci95_half_width(double s, std::size_t n);

struct Summary {
    double mean = 0.0;
    double std = 0.0;
    std::size_t n = 0;
    std::optional<double> ci95_half;
};

Summary summarize(std::span<const double> xs);

/// One-sided Welch test of H1: mean(a) > mean(b). Returns the p-value.
double welch_greater_p(std::span<const double> a, std::span<const double> b);

/// One-sided one-sample t test of H1: mean(xs) > mu. Returns the p-value.
double one_sample_greater_p(std::span<const double> xs, double mu);

} // namespace nkze::stats
