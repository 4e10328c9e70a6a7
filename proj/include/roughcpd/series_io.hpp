#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace roughcpd {

/// Raised when an input file cannot be turned into a TimeSeries.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by validate_params; what() lists every violated constraint.
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Ordered multivariate observations y_1..y_T in R^p with unit spacing.
///
/// Time indices in the public API are 1-based throughout the library.
/// Values are stored row-major and never change after construction.
class TimeSeries {
public:
    /// Throws std::invalid_argument unless rows >= 2, cols >= 1, the data
    /// size matches and every entry is finite.
    TimeSeries(std::size_t rows, std::size_t cols, std::vector<double> values);

    /// Univariate convenience constructor.
    static TimeSeries univariate(std::vector<double> values);

    std::size_t length() const noexcept { return rows_; }
    std::size_t dims() const noexcept { return cols_; }

    /// Observation at time t (1-based), column j (0-based).
    double at(std::size_t t, std::size_t j = 0) const { return values_[(t - 1) * cols_ + j]; }
    std::span<const double> row(std::size_t t) const;
    std::vector<double> column(std::size_t j) const;
    const std::vector<double>& values() const noexcept { return values_; }

    bool operator==(const TimeSeries&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

/// Hyperparameters of the detector.
struct DetectorParams {
    int delta_reg = 50;      ///< regularity half-window (samples)
    double big_delta = 0.0;  ///< fuzziness half-width
    double w = 0.0;          ///< roughness half-width
    double beta = 2.718281828459045;
    double alpha = 0.05;

    bool operator==(const DetectorParams&) const = default;
};

/// Returns params unchanged when every constraint holds for a series of
/// length T, otherwise throws ParamError naming each violation.
DetectorParams validate_params(const DetectorParams& params, std::size_t T);

struct Candidate {
    std::size_t s = 0;  ///< 1-based time index
    double entropy = 0.0;
    double h_star = 0.0;
    double sigma_star = 0.0;
    double z = 0.0;  ///< NaN when the candidate is degenerate
    bool accepted = false;
    bool degenerate = false;
};

struct ChangepointReport {
    std::vector<Candidate> candidates;
    DetectorParams params;
    std::string measure_name;
    double null_mu = 0.0;
    double normalizer = 0.0;
    std::vector<std::string> warnings;
};

/// Field-wise equality treating NaN == NaN.
bool same_report(const ChangepointReport& a, const ChangepointReport& b);

TimeSeries parse_csv(const std::string& text, bool has_header);
TimeSeries load_csv(const std::filesystem::path& path, bool has_header);

std::string series_to_csv(const TimeSeries& series);
void write_csv(const TimeSeries& series, const std::filesystem::path& path);

/// x with 17 significant digits (printf %.17g), locale independent; "null" if non-finite.
std::string format_real(double x);

std::string report_to_json(const ChangepointReport& report);
std::string report_to_csv(const ChangepointReport& report);
ChangepointReport parse_report(const std::string& json_text);

void write_report(const ChangepointReport& report, const std::filesystem::path& path);
ChangepointReport read_report(const std::filesystem::path& path);

/// Writes text to path, throwing std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace roughcpd
