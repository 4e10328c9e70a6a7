#include "roughcpd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace roughcpd {

namespace {

ProfileSums unweighted_sums(const ApproximationProfile& profile) {
    const std::vector<double> ones(profile.length(), 1.0);
    return weighted_sums(profile, ones);
}

double median(std::vector<double> x) {
    const auto n = x.size();
    const auto mid = x.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(x.begin(), mid, x.end());
    if (n % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(x.begin(), mid);
    return 0.5 * (lo + hi);
}

}  // namespace

double NullDistributionParams::sigma(std::size_t m, std::size_t n) const {
    const std::size_t lag = m > n ? m - n : n - m;
    if (lag > bandwidth || lag >= autocov.size()) return 0.0;
    return normalizer * normalizer * autocov[lag];
}

std::size_t detect_single(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("cannot locate the minimum of an empty curve");
    return argmin_in_range(values, 1, values.size());
}

std::size_t detect_single(const EntropyCurve& curve) { return detect_single(curve.values); }

std::size_t argmin_in_range(std::span<const double> values, std::size_t first, std::size_t last) {
    if (first < 1 || last > values.size() || first > last)
        throw std::invalid_argument("argmin range [" + std::to_string(first) + ", " + std::to_string(last) +
                                    "] is empty or outside the curve");
    std::size_t best = first;
    for (std::size_t s = first + 1; s <= last; ++s) {
        if (values[s - 1] < values[best - 1]) best = s;
    }
    return best;
}

std::vector<std::size_t> find_local_minima(std::span<const double> values, double min_separation,
                                           std::size_t edge_margin) {
    if (min_separation < 0.0) throw std::invalid_argument("min_separation must be >= 0");
    const std::size_t T = values.size();
    std::vector<std::size_t> found;
    std::size_t a = 1;  // 0-based start of the current run
    while (a + 1 < T) {
        std::size_t b = a;
        while (b + 1 < T && values[b + 1] == values[a]) ++b;
        if (values[a - 1] > values[a] && b + 1 < T && values[b + 1] > values[b]) found.push_back((a + b) / 2 + 1);
        a = b + 1;
    }

    std::erase_if(found, [&](std::size_t s) { return s <= edge_margin || s + edge_margin > T; });

    std::vector<std::size_t> order = found;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x - 1] < values[y - 1]; });
    std::vector<std::size_t> kept;
    for (std::size_t s : order) {
        const bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
            return std::abs(static_cast<double>(s) - static_cast<double>(k)) >= min_separation;
        });
        if (clear) kept.push_back(s);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

double null_entropy(const ProfileSums& u, double beta) {
    if (!(u.upper > 0.0) || !(u.upper_c > 0.0))
        throw std::domain_error("null entropy undefined: upper approximation has zero mass");
    const double b = u.lower / u.upper;
    const double bc = u.lower_c / u.upper_c;
    return (1.0 - b) * std::pow(beta, b) + (1.0 - bc) * std::pow(beta, bc);
}

std::vector<double> null_entropy_curve(std::size_t T, const DetectorParams& params) {
    const auto checked = validate_params(params, T);
    const BandedProfileSums sums(std::vector<double>(T, 1.0), checked.big_delta, checked.w);
    std::vector<double> out(T);
    for (std::size_t s = 1; s <= T; ++s) out[s - 1] = null_entropy(sums.at(static_cast<double>(s)), checked.beta);
    return out;
}

std::vector<double> a_weights(const ApproximationProfile& profile, double mu, double beta) {
    if (mu == 0.0) throw std::invalid_argument("null mean mu must be nonzero");
    const auto u = unweighted_sums(profile);
    if (!(u.upper > 0.0) || !(u.upper_c > 0.0))
        throw std::domain_error("A weights undefined: upper approximation has zero mass");
    const double b = u.lower / u.upper;
    const double bc = u.lower_c / u.upper_c;
    // dH/drho at rho = 1 - b, generalising b e^b to any base.
    const double log_beta = std::log(beta);
    const double g = std::pow(beta, b) * (1.0 - (1.0 - b) * log_beta);
    const double gc = std::pow(beta, bc) * (1.0 - (1.0 - bc) * log_beta);
    const double k = g / (mu * u.upper * u.upper);
    const double kc = gc / (mu * u.upper_c * u.upper_c);

    std::vector<double> a(profile.length());
    for (std::size_t n = 0; n < a.size(); ++n) {
        a[n] = k * (profile.upper_gamma[n] * u.lower - profile.lower_gamma[n] * u.upper) +
               kc * (profile.upper_gamma_c[n] * u.lower_c - profile.lower_gamma_c[n] * u.upper_c);
    }
    return a;
}

double sigma_star(std::span<const double> a, std::span<const double> b, const NullDistributionParams& null) {
    if (a.size() != b.size()) throw std::invalid_argument("weight vectors differ in length");
    const std::size_t T = a.size();
    double total = 0.0;
    for (std::size_t m = 0; m < T; ++m) {
        if (a[m] == 0.0) continue;
        const std::size_t lo = m > null.bandwidth ? m - null.bandwidth : 0;
        const std::size_t hi = std::min(T - 1, m + null.bandwidth);
        double row = 0.0;
        for (std::size_t n = lo; n <= hi; ++n) row += null.sigma(m, n) * b[n];
        total += a[m] * row;
    }
    return total;
}

NullDistributionParams estimate_null_params(const RegularityCurve& regularity, int delta_reg,
                                            std::vector<std::string>* warnings) {
    const std::size_t T = regularity.length();
    if (delta_reg < 1) throw std::invalid_argument("delta_reg must be positive");
    const auto d = static_cast<std::size_t>(delta_reg);
    if (T <= 4 * d)
        throw std::invalid_argument("null estimation needs T > 4*delta_reg (T = " + std::to_string(T) +
                                    ", delta_reg = " + std::to_string(delta_reg) + ")");
    const auto& r = regularity.values;
    NullDistributionParams null;
    null.mu = median(r);
    null.normalizer = std::sqrt(static_cast<double>(delta_reg));
    null.bandwidth = 2 * d - 1;
    null.autocov.assign(null.bandwidth + 1, 0.0);
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(T);
    for (std::size_t k = 0; k <= null.bandwidth; ++k) {
        double acc = 0.0;
        for (std::size_t t = 0; t + k < T; ++t) acc += (r[t] - mean) * (r[t + k] - mean);
        null.autocov[k] = acc / static_cast<double>(T);
    }
    if (std::all_of(r.begin(), r.end(), [&](double x) { return x == r.front(); })) {
        std::fill(null.autocov.begin(), null.autocov.end(), 0.0);
        if (warnings)
            warnings->push_back("regularity curve is constant: null covariance is zero and no candidate can be accepted");
    }
    return null;
}

double default_min_separation(const DetectorParams& params) { return 4.0 * params.w + 2.0 * params.big_delta; }

std::size_t default_edge_margin(const DetectorParams& params) {
    const auto band = static_cast<std::size_t>(std::ceil(params.big_delta + 2.0 * params.w));
    return std::max(static_cast<std::size_t>(std::max(params.delta_reg, 0)), band);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile level must lie in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

ChangepointReport detect_multiple(const RegularityCurve& regularity, const DetectorParams& params,
                                  const DetectionOptions& options) {
    const auto checked = validate_params(params, regularity.length());
    const std::size_t T = regularity.length();
    const auto curve = entropy_curve(regularity, checked);

    ChangepointReport report;
    report.params = checked;
    report.measure_name = regularity.measure_name;

    auto null = estimate_null_params(regularity, checked.delta_reg, &report.warnings);
    if (options.mu) {
        if (*options.mu == 0.0) throw std::invalid_argument("null mean mu must be nonzero");
        null.mu = *options.mu;
    }
    if (options.a_delta) {
        if (!(*options.a_delta > 0.0)) throw std::invalid_argument("a_delta must be > 0");
        null.normalizer = *options.a_delta;
    }
    report.null_mu = null.mu;
    report.normalizer = null.normalizer;

    const double min_sep = options.min_separation.value_or(default_min_separation(checked));
    const std::size_t margin = options.edge_margin.value_or(default_edge_margin(checked));
    const double z_alpha = normal_quantile(checked.alpha);

    for (std::size_t s : find_local_minima(curve.values, min_sep, margin)) {
        const auto profile = make_profile(static_cast<double>(s), checked.big_delta, checked.w, T);
        Candidate c;
        c.s = s;
        c.entropy = curve.values[s - 1];
        c.h_star = null_entropy(unweighted_sums(profile), checked.beta);
        const auto a = a_weights(profile, null.mu, checked.beta);
        c.sigma_star = sigma_star(a, a, null);
        if (!(c.sigma_star > 0.0) || !std::isfinite(c.sigma_star)) {
            c.degenerate = true;
            c.sigma_star = std::max(c.sigma_star, 0.0);
            c.z = std::numeric_limits<double>::quiet_NaN();
            c.accepted = false;
        } else {
            c.z = null.normalizer * (c.entropy - c.h_star) / std::sqrt(c.sigma_star);
            c.accepted = c.z < z_alpha;
        }
        report.candidates.push_back(c);
    }
    return report;
}

ChangepointReport detect_multiple(const TimeSeries& series, const DetectorParams& params, Measure measure,
                                  const DetectionOptions& options) {
    const auto checked = validate_params(params, series.length());
    return detect_multiple(regularity_curve(series, checked.delta_reg, measure, options.measure), checked, options);
}

}  // namespace roughcpd
