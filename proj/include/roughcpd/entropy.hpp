#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "roughcpd/fuzzy_rough.hpp"
#include "roughcpd/regularity.hpp"
#include "roughcpd/series_io.hpp"

namespace roughcpd {

/// Weighted masses sum_t M(t) * R(t) of the four approximation curves.
struct ProfileSums {
    double lower = 0.0;
    double upper = 0.0;
    double lower_c = 0.0;
    double upper_c = 0.0;
};

struct Roughness {
    double rho = 0.0;
    double rho_c = 0.0;
};

ProfileSums weighted_sums(const ApproximationProfile& profile, std::span<const double> weights);

/// rho = 1 - lower / upper for the partition and for its complement.
/// Throws std::domain_error when an upper mass is not positive.
Roughness roughness(const ProfileSums& sums);
Roughness roughness(const ApproximationProfile& profile, const RegularityCurve& regularity);

/// rho * beta^(1-rho) + rho_c * beta^(1-rho_c).
double exp_entropy(double rho, double rho_c, double beta);

/// -(chi(rho) + chi(rho_c)) / 2 with chi(x) = x log_beta(x / beta), chi(0) = 0.
double log_entropy(double rho, double rho_c, double beta);

/// Computes ProfileSums for any candidate s in O(w + big_delta) using
/// prefix sums of the weights: all four curves are constant outside
/// [s - 2w - big_delta, s + 2w + big_delta].
class BandedProfileSums {
public:
    BandedProfileSums(std::vector<double> weights, double big_delta, double w);

    ProfileSums at(double s) const;
    std::size_t length() const noexcept { return weights_.size(); }
    double total() const noexcept { return prefix_.back(); }

private:
    std::vector<double> weights_;
    std::vector<double> prefix_;  // prefix_[k] = sum of the first k weights
    double big_delta_;
    double w_;
};

struct EntropyCurve {
    std::vector<double> values;  ///< H^E(s) at index s-1
    DetectorParams params;
    std::string measure_name;

    std::size_t length() const noexcept { return values.size(); }
};

EntropyCurve entropy_curve(const RegularityCurve& regularity, const DetectorParams& params);

EntropyCurve entropy_curve(const TimeSeries& series, const DetectorParams& params, Measure measure,
                           const MeasureOptions& options = {});

}  // namespace roughcpd
