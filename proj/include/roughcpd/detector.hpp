#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roughcpd/entropy.hpp"
#include "roughcpd/fuzzy_rough.hpp"
#include "roughcpd/regularity.hpp"
#include "roughcpd/series_io.hpp"

namespace roughcpd {

/// Null-hypothesis description of the regularity process used to screen
/// candidates: mean mu, banded covariance of the normalised process
/// a_delta * (R - mu), and the normalising rate a_delta.
struct NullDistributionParams {
    double mu = 1.0;
    /// autocov[k] is the covariance of R at lag k (unnormalised), k = 0..bandwidth.
    std::vector<double> autocov;
    double normalizer = 1.0;
    /// Largest lag with a nonzero covariance.
    std::size_t bandwidth = 0;

    /// sigma(m, n) = normalizer^2 * autocov[|m - n|], zero beyond the band.
    double sigma(std::size_t m, std::size_t n) const;
};

/// Smallest 1-based s attaining the global minimum.
std::size_t detect_single(std::span<const double> values);
std::size_t detect_single(const EntropyCurve& curve);

/// Smallest argmin restricted to the 1-based range [first, last].
std::size_t argmin_in_range(std::span<const double> values, std::size_t first, std::size_t last);

/// Weak interior local minima (a flat run counts once, at its midpoint),
/// minus those with s <= edge_margin or s > T - edge_margin, then thinned so
/// that survivors are at least min_separation apart, preferring lower values
/// and, on ties, earlier indices. Returned ascending.
std::vector<std::size_t> find_local_minima(std::span<const double> values, double min_separation,
                                           std::size_t edge_margin);

/// H*(s) from unweighted approximation masses:
/// (1 - b) beta^b + (1 - b_c) beta^b_c with b = lower / upper.
double null_entropy(const ProfileSums& unweighted, double beta = 2.718281828459045);

/// H*(s) for s = 1..T, the entropy curve of a constant regularity curve.
std::vector<double> null_entropy_curve(std::size_t T, const DetectorParams& params);

/// Derivative of H^E(s) with respect to R(n) at R = mu, for n = 1..T.
std::vector<double> a_weights(const ApproximationProfile& profile, double mu,
                              double beta = 2.718281828459045);

/// sum_m sum_n a(m) sigma(m, n) b(n) over the band.
double sigma_star(std::span<const double> a, std::span<const double> b, const NullDistributionParams& null);

/// Plug-in estimates: mu = median of R, autocovariance truncated below lag
/// 2 * delta_reg, normalizer = sqrt(delta_reg). Requires T > 4 * delta_reg.
/// Appends a warning when the curve is constant.
NullDistributionParams estimate_null_params(const RegularityCurve& regularity, int delta_reg,
                                            std::vector<std::string>* warnings = nullptr);

struct DetectionOptions {
    std::optional<double> min_separation;     ///< default 4w + 2 big_delta
    std::optional<std::size_t> edge_margin;   ///< default max(delta, ceil(big_delta + 2w))
    std::optional<double> a_delta;            ///< overrides the normalizer
    std::optional<double> mu;                 ///< overrides the null mean
    MeasureOptions measure;
};

double default_min_separation(const DetectorParams& params);
std::size_t default_edge_margin(const DetectorParams& params);

/// Local minima of the entropy curve screened by the asymptotic z-test.
ChangepointReport detect_multiple(const RegularityCurve& regularity, const DetectorParams& params,
                                  const DetectionOptions& options = {});

ChangepointReport detect_multiple(const TimeSeries& series, const DetectorParams& params, Measure measure,
                                  const DetectionOptions& options = {});

/// Standard normal quantile.
double normal_quantile(double p);

}  // namespace roughcpd
