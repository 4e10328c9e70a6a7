#include "roughcpd/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roughcpd {

ProfileSums weighted_sums(const ApproximationProfile& profile, std::span<const double> weights) {
    if (weights.size() != profile.length())
        throw std::invalid_argument("profile and regularity curve differ in length");
    ProfileSums s;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        s.lower += profile.lower_gamma[i] * weights[i];
        s.upper += profile.upper_gamma[i] * weights[i];
        s.lower_c += profile.lower_gamma_c[i] * weights[i];
        s.upper_c += profile.upper_gamma_c[i] * weights[i];
    }
    return s;
}

Roughness roughness(const ProfileSums& sums) {
    if (!(sums.upper > 0.0) || !(sums.upper_c > 0.0))
        throw std::domain_error("roughness undefined: upper approximation has zero weighted mass");
    Roughness r;
    r.rho = std::clamp(1.0 - sums.lower / sums.upper, 0.0, 1.0);
    r.rho_c = std::clamp(1.0 - sums.lower_c / sums.upper_c, 0.0, 1.0);
    return r;
}

Roughness roughness(const ApproximationProfile& profile, const RegularityCurve& regularity) {
    return roughness(weighted_sums(profile, regularity.values));
}

double exp_entropy(double rho, double rho_c, double beta) {
    return rho * std::pow(beta, 1.0 - rho) + rho_c * std::pow(beta, 1.0 - rho_c);
}

double log_entropy(double rho, double rho_c, double beta) {
    const double log_beta = std::log(beta);
    const auto chi = [&](double x) { return x > 0.0 ? x * (std::log(x) / log_beta - 1.0) : 0.0; };
    return -0.5 * (chi(rho) + chi(rho_c));
}

BandedProfileSums::BandedProfileSums(std::vector<double> weights, double big_delta, double w)
    : weights_(std::move(weights)), prefix_(weights_.size() + 1, 0.0), big_delta_(big_delta), w_(w) {
    if (!(big_delta > 0.0) || !(w > 0.0)) throw std::invalid_argument("big_delta and w must be > 0");
    for (std::size_t i = 0; i < weights_.size(); ++i) prefix_[i + 1] = prefix_[i] + weights_[i];
}

ProfileSums BandedProfileSums::at(double s) const {
    const auto T = static_cast<double>(weights_.size());
    const double reach = 2.0 * w_ + big_delta_;
    // Integer t in [first, last] may fall inside the band; t < first has
    // lower = upper = 1 and t > last has lower = upper = 0.
    const double first = std::clamp(std::ceil(s - reach), 1.0, T + 1.0);
    const double last = std::clamp(std::floor(s + reach), 0.0, T);
    ProfileSums out;
    const auto head = static_cast<std::size_t>(first) - 1;
    out.lower = prefix_[head];
    out.upper = prefix_[head];
    for (double t = first; t <= last; t += 1.0) {
        const double r = weights_[static_cast<std::size_t>(t) - 1];
        out.lower += lower_approx(s, big_delta_, w_, t) * r;
        out.upper += upper_approx(s, big_delta_, w_, t) * r;
    }
    out.lower_c = total() - out.upper;
    out.upper_c = total() - out.lower;
    return out;
}

EntropyCurve entropy_curve(const RegularityCurve& regularity, const DetectorParams& params) {
    const auto checked = validate_params(params, regularity.length());
    const BandedProfileSums sums(regularity.values, checked.big_delta, checked.w);
    EntropyCurve curve;
    curve.params = checked;
    curve.measure_name = regularity.measure_name;
    curve.values.resize(regularity.length());
    for (std::size_t s = 1; s <= regularity.length(); ++s) {
        const auto r = roughness(sums.at(static_cast<double>(s)));
        curve.values[s - 1] = exp_entropy(r.rho, r.rho_c, checked.beta);
    }
    return curve;
}

EntropyCurve entropy_curve(const TimeSeries& series, const DetectorParams& params, Measure measure,
                           const MeasureOptions& options) {
    const auto checked = validate_params(params, series.length());
    return entropy_curve(regularity_curve(series, checked.delta_reg, measure, options), checked);
}

}  // namespace roughcpd
