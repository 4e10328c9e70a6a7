#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "roughcpd/regularity.hpp"
#include "roughcpd/series_io.hpp"

namespace roughcpd {

/// Standard normal variates from std::mt19937_64 (whose output sequence is
/// fixed by the C++ standard) via the Marsaglia polar method. Uniforms use
/// the top 53 bits of each draw.
class NormalGenerator {
public:
    explicit NormalGenerator(std::uint64_t seed);

    double uniform();  ///< in [0, 1)
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finaliser. Used to derive per-replicate seeds.
std::uint64_t mix_seed(std::uint64_t x);

enum class ScenarioKind { DiscreteJump, ContinuousJump, SmoothJump };

/// "s1", "s2" or "s3".
ScenarioKind parse_scenario(std::string_view name);
std::string scenario_name(ScenarioKind kind);

struct SimulationScenario {
    ScenarioKind kind = ScenarioKind::ContinuousJump;
    std::size_t T = 1000;
    double cp = 666.0;
    double jump = 2.0;
    double fuzziness = 0.0;  ///< ramp half-width F (S2, S3)
    std::uint64_t seed = 1;
};

/// Noise-free mean curve mu(t) at t = 1..T.
std::vector<double> mean_curve(const SimulationScenario& scn);

/// y_t = mu(t) + N(0,1) noise from NormalGenerator(seed).
TimeSeries gen_scenario(const SimulationScenario& scn);

/// E(S^2) / E(N^2) with S the mean curve and unit-variance noise.
double signal_to_noise(const SimulationScenario& scn);

struct MethodConfig {
    Measure measure = Measure::KolmogorovSmirnov;
    MeasureOptions measure_options;
    int delta_reg = 50;
    double w = 50.0;
    double big_delta = 50.0;
    double beta = 2.718281828459045;
    /// Both estimators search s in [margin + 1, T - margin]; default delta_reg.
    std::optional<std::size_t> search_margin;
    unsigned threads = 1;
};

struct ExperimentResult {
    std::string method_name;
    SimulationScenario scenario;
    std::size_t replicates = 0;
    double rmse = 0.0;
    std::vector<std::size_t> estimates;
};

/// Both estimators on the same replicates. `centred` is a diagnostic:
/// argmin of H^E - H*, which removes the positional trend H* carries.
struct Comparison {
    ExperimentResult proposed;
    ExperimentResult base;
    ExperimentResult centred;
    double snr = 0.0;

    /// 1 - MSE_proposed / MSE_base.
    double relative_mse_reduction() const;
};

double rmse_of(const std::vector<std::size_t>& estimates, double cp);

/// Point estimates for one series: argmin of R (base), of H^E (proposed)
/// and of H^E - H* (centred).
struct PointEstimates {
    std::size_t base = 0;
    std::size_t proposed = 0;
    std::size_t centred = 0;
};
PointEstimates estimate_once(const TimeSeries& series, const MethodConfig& config);

/// Replicate r uses seed mix_seed(scn.seed + r).
Comparison monte_carlo_rmse(const SimulationScenario& scn, const MethodConfig& config, std::size_t replicates);

std::vector<Comparison> snr_sweep(const std::vector<double>& jumps, const SimulationScenario& scn,
                                  const MethodConfig& config, std::size_t replicates);

std::vector<Comparison> fuzziness_sweep(const std::vector<double>& fuzziness, const SimulationScenario& scn,
                                        const MethodConfig& config, std::size_t replicates);

struct SensitivityGrid {
    std::vector<double> w_values;
    std::vector<double> delta_values;
    /// rmse[i][j] for w_values[i], delta_values[j] (proposed method).
    std::vector<std::vector<double>> rmse;
};

SensitivityGrid sensitivity_grid(const std::vector<double>& w_values, const std::vector<double>& delta_values,
                                 const SimulationScenario& scn, const MethodConfig& config, std::size_t replicates);

/// CSV rows mirroring the comparison table columns.
std::string comparisons_to_csv(const std::vector<Comparison>& rows, const MethodConfig& config);
std::string grid_to_csv(const SensitivityGrid& grid);

}  // namespace roughcpd
