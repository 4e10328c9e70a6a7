#include "roughcpd/fuzzy_rough.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughcpd {

namespace {

inline double sq(double x) { return x * x; }

void require_positive(double big_delta, double w) {
    if (!(big_delta > 0.0)) throw std::invalid_argument("big_delta must be > 0");
    if (!(w > 0.0)) throw std::invalid_argument("w must be > 0");
}

}  // namespace

double membership(double t, double s, double big_delta) {
    if (t <= s - big_delta) return 1.0;
    if (t <= s) return 1.0 - 2.0 * sq((t - (s - big_delta)) / (2.0 * big_delta));
    if (t <= s + big_delta) return 2.0 * sq(((s + big_delta) - t) / (2.0 * big_delta));
    return 0.0;
}

double tolerance(double t, double t_prime, double w) {
    const double d = std::abs(t - t_prime);
    if (d >= 2.0 * w) return 0.0;
    if (d > w) return 2.0 * sq((2.0 * w - d) / (2.0 * w));
    return 1.0 - 2.0 * sq(d / (2.0 * w));
}

double lower_approx(double s, double big_delta, double w, double t) {
    const double den = 2.0 * (w + big_delta);
    if (t < s - 2.0 * w - big_delta) return 1.0;
    if (t < s - w) return 1.0 - 2.0 * sq(((t + 2.0 * w) - (s - big_delta)) / den);
    if (t < s + big_delta) return 2.0 * sq(((s + big_delta) - t) / den);
    return 0.0;
}

double upper_approx(double s, double big_delta, double w, double t) {
    const double den = 2.0 * (w + big_delta);
    if (t < s - big_delta) return 1.0;
    if (t < s + w) return 1.0 - 2.0 * sq((t - (s - big_delta)) / den);
    if (t < s + 2.0 * w + big_delta) return 2.0 * sq(((s + big_delta) - (t - 2.0 * w)) / den);
    return 0.0;
}

ApproximationProfile profile_from_primary(double s, std::vector<double> lower, std::vector<double> upper) {
    if (lower.size() != upper.size()) throw std::invalid_argument("lower and upper curves differ in length");
    ApproximationProfile p;
    p.s = s;
    p.lower_gamma_c.resize(lower.size());
    p.upper_gamma_c.resize(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) {
        p.lower_gamma_c[i] = 1.0 - upper[i];
        p.upper_gamma_c[i] = 1.0 - lower[i];
    }
    p.lower_gamma = std::move(lower);
    p.upper_gamma = std::move(upper);
    return p;
}

ApproximationProfile make_profile(double s, double big_delta, double w, std::size_t T) {
    require_positive(big_delta, w);
    std::vector<double> lower(T), upper(T);
    for (std::size_t i = 0; i < T; ++i) {
        const double t = static_cast<double>(i + 1);
        lower[i] = lower_approx(s, big_delta, w, t);
        upper[i] = upper_approx(s, big_delta, w, t);
    }
    return profile_from_primary(s, std::move(lower), std::move(upper));
}

ApproximationProfile complement_profile(const ApproximationProfile& p) {
    ApproximationProfile c;
    c.s = p.s;
    c.lower_gamma = p.lower_gamma_c;
    c.upper_gamma = p.upper_gamma_c;
    c.lower_gamma_c = p.lower_gamma;
    c.upper_gamma_c = p.upper_gamma;
    return c;
}

namespace {

template <typename Member>
ApproxPair brute_force_impl(const Member& member, double w, double t, double grid_step) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");
    if (!(w > 0.0)) throw std::invalid_argument("w must be > 0");
    // Outside [t-2w, t+2w] the tolerance vanishes, so those psi cannot move
    // the infimum below 1 or the supremum above 0.
    const auto steps = static_cast<long>(std::floor(4.0 * w / grid_step + 1e-9));
    double lower = 1.0;
    double upper = 0.0;
    for (long k = 0; k <= steps; ++k) {
        const double psi = t - 2.0 * w + static_cast<double>(k) * grid_step;
        const double tol = tolerance(t, psi, w);
        const double m = member(psi);
        lower = std::min(lower, std::max(1.0 - tol, m));
        upper = std::max(upper, std::min(tol, m));
    }
    return {lower, upper};
}

}  // namespace

ApproxPair brute_force_approx(const std::function<double(double)>& member, double w, double t,
                              double grid_step) {
    return brute_force_impl(member, w, t, grid_step);
}

ApproxPair brute_force_approx(double s, double big_delta, double w, double t, double grid_step) {
    require_positive(big_delta, w);
    if (grid_step > 0.1) throw std::invalid_argument("grid_step must be <= 0.1");
    return brute_force_impl([=](double psi) { return membership(psi, s, big_delta); }, w, t, grid_step);
}

}  // namespace roughcpd
