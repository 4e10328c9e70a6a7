#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace roughcpd {

/// Quadratic S-curve membership of t in the partition left of s.
///
/// Equals 1 up to s - big_delta, 1/2 at s and 0 from s + big_delta on, with
/// quadratic pieces of denominator 2*big_delta in between. Satisfies
/// membership(t) == 1 - membership(2s - t).
double membership(double t, double s, double big_delta);

/// Quadratic tolerance S_w(t, t'), a function of |t - t'| with support
/// |t - t'| < 2w and S_w(t, t) == 1.
double tolerance(double t, double t_prime, double w);

/// Closed-form lower approximation M_lower(t) of the left partition at s.
double lower_approx(double s, double big_delta, double w, double t);

/// Closed-form upper approximation M_upper(t) of the left partition at s.
double upper_approx(double s, double big_delta, double w, double t);

/// Lower and upper approximation curves of the left partition gamma_s and of
/// its complement, sampled at t = 1..T (index t-1).
struct ApproximationProfile {
    double s = 0.0;
    std::vector<double> lower_gamma;
    std::vector<double> upper_gamma;
    std::vector<double> lower_gamma_c;
    std::vector<double> upper_gamma_c;

    std::size_t length() const noexcept { return lower_gamma.size(); }
    bool operator==(const ApproximationProfile&) const = default;
};

/// Fills the complement curves from the left-partition curves:
/// lower_c = 1 - upper and upper_c = 1 - lower.
ApproximationProfile profile_from_primary(double s, std::vector<double> lower, std::vector<double> upper);

/// Profile at candidate s for t = 1..T from the closed forms.
/// Throws std::invalid_argument unless big_delta > 0 and w > 0.
ApproximationProfile make_profile(double s, double big_delta, double w, std::size_t T);

/// The profile of gamma_s^C: its primary curves are the complement curves of
/// the input and vice versa. Applying it twice returns the input exactly.
ApproximationProfile complement_profile(const ApproximationProfile& profile);

struct ApproxPair {
    double lower = 0.0;
    double upper = 0.0;
};

/// Direct evaluation of the inf-max / sup-min definitions on the grid
/// psi = t - 2w, t - 2w + step, ..., t + 2w, for an arbitrary membership.
ApproxPair brute_force_approx(const std::function<double(double)>& member, double w, double t,
                              double grid_step);

/// brute_force_approx with membership(., s, big_delta). Requires grid_step <= 0.1.
ApproxPair brute_force_approx(double s, double big_delta, double w, double t, double grid_step);

}  // namespace roughcpd
