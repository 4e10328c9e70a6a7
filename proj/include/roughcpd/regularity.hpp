#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "roughcpd/series_io.hpp"

namespace roughcpd {

/// Left and right samples flanking t, as 1-based inclusive index ranges.
/// The right range is empty (right_first > right_last) only at t = T.
struct WindowPair {
    std::size_t left_first = 0;
    std::size_t left_last = 0;
    std::size_t right_first = 0;
    std::size_t right_last = 0;

    std::size_t left_size() const noexcept { return left_last - left_first + 1; }
    std::size_t right_size() const noexcept { return right_last >= right_first ? right_last - right_first + 1 : 0; }
    bool operator==(const WindowPair&) const = default;
};

/// left = max(1, t-delta+1)..t, right = t+1..min(T, t+delta).
WindowPair windows_at(std::size_t t, int delta_reg, std::size_t T);

enum class Measure { KolmogorovSmirnov, TTest, Hotelling };

struct MeasureOptions {
    /// Hotelling ridge added to the pooled matrix; unset means
    /// 1e-8 * trace(Sigma) / p at each t.
    std::optional<double> ridge;
    /// Welch (unequal variance) t statistic instead of the pooled one.
    bool welch = false;
};

/// "ks", "t" or "hotelling"; throws std::invalid_argument otherwise.
Measure parse_measure(std::string_view name);
std::string measure_name(Measure m);

/// Exact two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Squared two-sample t statistic. Returns +inf when the variance estimate
/// is zero but the means differ, and 0 when both vanish.
double t_statistic_squared(std::span<const double> a, std::span<const double> b, bool welch);

/// R(t) = 1 / (1 + (m1 - m2)' (Sigma + ridge I)^-1 (m1 - m2)), Sigma being
/// the second-moment matrix of both windows about their midpoint mean,
/// divided by (n1 + n2) / 2. Both windows need >= 2 points. Throws
/// std::domain_error when the regularised matrix is singular.
double hotelling_regularity(const TimeSeries& series, std::size_t t, int delta_reg,
                            std::optional<double> ridge = std::nullopt);

/// R(t) = 1 / (1 + T^2). A zero variance estimate saturates to
/// std::numeric_limits<double>::min() when the window means differ.
double ttest_regularity(const TimeSeries& series, std::size_t t, int delta_reg, bool welch = false);

/// R(t) = 1 / (1 + D) with D the exact KS distance between the windows.
double ks_regularity(const TimeSeries& series, std::size_t t, int delta_reg);

struct RegularityCurve {
    std::vector<double> values;  ///< R(t) at index t-1
    int delta_reg = 0;
    std::string measure_name;

    std::size_t length() const noexcept { return values.size(); }
};

/// Evaluates the measure at every t where its window requirement holds and
/// carries the nearest evaluated value out to t = 1 and t = T.
RegularityCurve regularity_curve(const TimeSeries& series, int delta_reg, Measure measure,
                                 const MeasureOptions& options = {});

RegularityCurve regularity_curve(const TimeSeries& series, int delta_reg, std::string_view measure,
                                 const MeasureOptions& options = {});

}  // namespace roughcpd
