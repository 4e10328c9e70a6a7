#include "roughcpd/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "roughcpd/detector.hpp"
#include "roughcpd/entropy.hpp"
#include "roughcpd/fuzzy_rough.hpp"

namespace roughcpd {

namespace {

/// Runs job(r) for r = 0..count-1 on up to `threads` workers.
template <typename Job>
void parallel_for(std::size_t count, unsigned threads, const Job& job) {
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (n == 1) {
        for (std::size_t r = 0; r < count; ++r) job(r);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned k = 0; k < n; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (std::size_t r = k; r < count; r += n) job(r);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

DetectorParams params_of(const MethodConfig& c) {
    DetectorParams p;
    p.delta_reg = c.delta_reg;
    p.big_delta = c.big_delta;
    p.w = c.w;
    p.beta = c.beta;
    return p;
}

std::size_t margin_of(const MethodConfig& c) {
    return c.search_margin.value_or(static_cast<std::size_t>(std::max(c.delta_reg, 0)));
}

void check_scenario(const SimulationScenario& scn) {
    if (!(scn.cp > 1.0 && scn.cp < static_cast<double>(scn.T)))
        throw std::invalid_argument("changepoint must satisfy 1 < cp < T");
    if (!std::isfinite(scn.jump)) throw std::invalid_argument("jump must be finite");
    if (!(scn.fuzziness >= 0.0)) throw std::invalid_argument("fuzziness must be >= 0");
}

}  // namespace

NormalGenerator::NormalGenerator(std::uint64_t seed) : engine_(seed) {}

double NormalGenerator::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double NormalGenerator::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0, v = 0.0, q = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        q = u * u + v * v;
    } while (q >= 1.0 || q == 0.0);
    const double f = std::sqrt(-2.0 * std::log(q) / q);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ScenarioKind parse_scenario(std::string_view name) {
    if (name == "s1") return ScenarioKind::DiscreteJump;
    if (name == "s2") return ScenarioKind::ContinuousJump;
    if (name == "s3") return ScenarioKind::SmoothJump;
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "' (expected s1, s2 or s3)");
}

std::string scenario_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::DiscreteJump: return "s1";
        case ScenarioKind::ContinuousJump: return "s2";
        case ScenarioKind::SmoothJump: return "s3";
    }
    return "unknown";
}

std::vector<double> mean_curve(const SimulationScenario& scn) {
    check_scenario(scn);
    std::vector<double> mu(scn.T);
    const double F = scn.fuzziness;
    for (std::size_t i = 0; i < scn.T; ++i) {
        const double t = static_cast<double>(i + 1);
        double level = 0.0;  // fraction of the jump reached at t
        switch (scn.kind) {
            case ScenarioKind::DiscreteJump: level = t > scn.cp ? 1.0 : 0.0; break;
            case ScenarioKind::ContinuousJump:
                if (F == 0.0) {
                    level = t > scn.cp ? 1.0 : 0.0;
                } else {
                    level = std::clamp((t - (scn.cp - F)) / (2.0 * F), 0.0, 1.0);
                }
                break;
            case ScenarioKind::SmoothJump:
                level = F == 0.0 ? (t > scn.cp ? 1.0 : 0.0) : 1.0 - membership(t, scn.cp, F);
                break;
        }
        mu[i] = scn.jump * level;
    }
    return mu;
}

TimeSeries gen_scenario(const SimulationScenario& scn) {
    auto y = mean_curve(scn);
    NormalGenerator gen(scn.seed);
    for (auto& v : y) v += gen.normal();
    return TimeSeries::univariate(std::move(y));
}

double signal_to_noise(const SimulationScenario& scn) {
    const auto mu = mean_curve(scn);
    double acc = 0.0;
    for (double m : mu) acc += m * m;
    return acc / static_cast<double>(mu.size());
}

double Comparison::relative_mse_reduction() const {
    const double mse_base = base.rmse * base.rmse;
    if (mse_base == 0.0) return proposed.rmse == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return 1.0 - proposed.rmse * proposed.rmse / mse_base;
}

double rmse_of(const std::vector<std::size_t>& estimates, double cp) {
    if (estimates.empty()) return 0.0;
    double acc = 0.0;
    for (auto e : estimates) {
        const double d = static_cast<double>(e) - cp;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(estimates.size()));
}

PointEstimates estimate_once(const TimeSeries& series, const MethodConfig& config) {
    const auto params = validate_params(params_of(config), series.length());
    const auto reg = regularity_curve(series, params.delta_reg, config.measure, config.measure_options);
    const auto ent = entropy_curve(reg, params);
    const std::size_t T = series.length();
    const std::size_t margin = margin_of(config);
    if (2 * margin >= T) throw std::invalid_argument("search margin leaves no admissible changepoint");
    auto centred = null_entropy_curve(T, params);
    for (std::size_t i = 0; i < T; ++i) centred[i] = ent.values[i] - centred[i];
    return {argmin_in_range(reg.values, margin + 1, T - margin), argmin_in_range(ent.values, margin + 1, T - margin),
            argmin_in_range(centred, margin + 1, T - margin)};
}

Comparison monte_carlo_rmse(const SimulationScenario& scn, const MethodConfig& config, std::size_t replicates) {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    check_scenario(scn);
    std::vector<PointEstimates> est(replicates);
    parallel_for(replicates, config.threads, [&](std::size_t r) {
        auto one = scn;
        one.seed = mix_seed(scn.seed + r);
        est[r] = estimate_once(gen_scenario(one), config);
    });

    Comparison out;
    out.snr = signal_to_noise(scn);
    const std::string suffix = "(" + measure_name(config.measure) + ")";
    out.proposed.method_name = "rough-fuzzy" + suffix;
    out.base.method_name = "base" + suffix;
    out.centred.method_name = "centred" + suffix;
    for (auto* res : {&out.proposed, &out.base, &out.centred}) {
        res->scenario = scn;
        res->replicates = replicates;
        res->estimates.reserve(replicates);
    }
    for (const auto& e : est) {
        out.proposed.estimates.push_back(e.proposed);
        out.base.estimates.push_back(e.base);
        out.centred.estimates.push_back(e.centred);
    }
    out.proposed.rmse = rmse_of(out.proposed.estimates, scn.cp);
    out.base.rmse = rmse_of(out.base.estimates, scn.cp);
    out.centred.rmse = rmse_of(out.centred.estimates, scn.cp);
    return out;
}

std::vector<Comparison> snr_sweep(const std::vector<double>& jumps, const SimulationScenario& scn,
                                  const MethodConfig& config, std::size_t replicates) {
    std::vector<Comparison> out;
    for (double j : jumps) {
        auto s = scn;
        s.jump = j;
        out.push_back(monte_carlo_rmse(s, config, replicates));
    }
    return out;
}

std::vector<Comparison> fuzziness_sweep(const std::vector<double>& fuzziness, const SimulationScenario& scn,
                                        const MethodConfig& config, std::size_t replicates) {
    std::vector<Comparison> out;
    for (double f : fuzziness) {
        auto s = scn;
        s.fuzziness = f;
        out.push_back(monte_carlo_rmse(s, config, replicates));
    }
    return out;
}

SensitivityGrid sensitivity_grid(const std::vector<double>& w_values, const std::vector<double>& delta_values,
                                 const SimulationScenario& scn, const MethodConfig& config, std::size_t replicates) {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    check_scenario(scn);
    const std::size_t nw = w_values.size();
    const std::size_t nd = delta_values.size();
    const std::size_t T = scn.T;
    const std::size_t margin = margin_of(config);
    if (2 * margin >= T) throw std::invalid_argument("search margin leaves no admissible changepoint");
    for (double w : w_values)
        for (double d : delta_values) {
            auto c = config;
            c.w = w;
            c.big_delta = d;
            validate_params(params_of(c), T);
        }

    // est[r][i * nd + j]: one regularity curve per replicate, reused by every cell.
    std::vector<std::vector<std::size_t>> est(replicates, std::vector<std::size_t>(nw * nd));
    parallel_for(replicates, config.threads, [&](std::size_t r) {
        auto one = scn;
        one.seed = mix_seed(scn.seed + r);
        const auto series = gen_scenario(one);
        const auto reg = regularity_curve(series, config.delta_reg, config.measure, config.measure_options);
        for (std::size_t i = 0; i < nw; ++i)
            for (std::size_t j = 0; j < nd; ++j) {
                auto c = config;
                c.w = w_values[i];
                c.big_delta = delta_values[j];
                const auto ent = entropy_curve(reg, params_of(c));
                est[r][i * nd + j] = argmin_in_range(ent.values, margin + 1, T - margin);
            }
    });

    SensitivityGrid g;
    g.w_values = w_values;
    g.delta_values = delta_values;
    g.rmse.assign(nw, std::vector<double>(nd, 0.0));
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nd; ++j) {
            std::vector<std::size_t> cell(replicates);
            for (std::size_t r = 0; r < replicates; ++r) cell[r] = est[r][i * nd + j];
            g.rmse[i][j] = rmse_of(cell, scn.cp);
        }
    return g;
}

std::string comparisons_to_csv(const std::vector<Comparison>& rows, const MethodConfig& config) {
    std::string o =
        "scenario,measure,w,big_delta,delta_reg,jump,fuzziness,snr,replicates,proposed_rmse,base_rmse,"
        "relative_mse_reduction,centred_rmse\n";
    for (const auto& c : rows) {
        const auto& s = c.proposed.scenario;
        o += scenario_name(s.kind) + ',' + measure_name(config.measure) + ',' + format_real(config.w) + ',' +
             format_real(config.big_delta) + ',' + std::to_string(config.delta_reg) + ',' + format_real(s.jump) + ',' +
             format_real(s.fuzziness) + ',' + format_real(c.snr) + ',' + std::to_string(c.proposed.replicates) + ',' +
             format_real(c.proposed.rmse) + ',' + format_real(c.base.rmse) + ',' +
             format_real(c.relative_mse_reduction()) + ',' + format_real(c.centred.rmse) + '\n';
    }
    return o;
}

std::string grid_to_csv(const SensitivityGrid& g) {
    std::string o = "w,big_delta,rmse\n";
    for (std::size_t i = 0; i < g.w_values.size(); ++i)
        for (std::size_t j = 0; j < g.delta_values.size(); ++j)
            o += format_real(g.w_values[i]) + ',' + format_real(g.delta_values[j]) + ',' + format_real(g.rmse[i][j]) +
                 '\n';
    return o;
}

}  // namespace roughcpd
