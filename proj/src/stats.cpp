#include "nkze/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <limits>
#include <utility>
#include <stdexcept>

namespace nkze::stats {

namespace {

// Welford's running moments; exact for constant samples.
std::pair<double, double> moments(std::span<const double> xs) {
    double m = 0.0, m2 = 0.0;
    std::size_t k = 0;
    for (double x : xs) {
        ++k;
        const double d = x - m;
        m += d / static_cast<double>(k);
        m2 += d * (x - m);
    }
    return {m, m2};
}

} // namespace

double mean(std::span<const double> xs) {
    if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
    return moments(xs).first;
}

double sample_std(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    return std::sqrt(moments(xs).second / static_cast<double>(xs.size() - 1));
}

double t_quantile(double p, double dof) {
    if (!(dof > 0.0)) throw std::domain_error("t_quantile: dof must be positive");
    boost::math::students_t dist(dof);
    return boost::math::quantile(dist, p);
}

std::optional<double> ci95_half_width(double s, std::size_t n) {
    if (n < 2) return std::nullopt;
    return t_quantile(0.975, static_cast<double>(n - 1)) * s / std::sqrt(static_cast<double>(n));
}

Summary summarize(std::span<const double> xs) {
    Summary out;
    out.n = xs.size();
    out.mean = mean(xs);
    out.std = sample_std(xs);
    out.ci95_half = ci95_half_width(out.std, out.n);
    return out;
}

namespace {

double upper_tail(double t, double dof) {
    if (std::isnan(t)) return 1.0;
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    boost::math::students_t dist(dof);
    return boost::math::cdf(boost::math::complement(dist, t));
}

} // namespace

double welch_greater_p(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw std::domain_error("welch test needs at least two samples per group");
    const double va = std::pow(sample_std(a), 2) / static_cast<double>(a.size());
    const double vb = std::pow(sample_std(b), 2) / static_cast<double>(b.size());
    const double diff = mean(a) - mean(b);
    const double se2 = va + vb;
    if (se2 == 0.0) return diff > 0 ? 0.0 : 1.0;
    const double t = diff / std::sqrt(se2);
    const double dof = se2 * se2 /
                       (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
    return upper_tail(t, dof);
}

double one_sample_greater_p(std::span<const double> xs, double mu) {
    if (xs.size() < 2) throw std::domain_error("t test needs at least two samples");
    const double s = sample_std(xs);
    const double diff = mean(xs) - mu;
    if (s == 0.0) return diff > 0 ? 0.0 : 1.0;
    const double t = diff / (s / std::sqrt(static_cast<double>(xs.size())));
    return upper_tail(t, static_cast<double>(xs.size() - 1));
}

} // namespace nkze::stats
