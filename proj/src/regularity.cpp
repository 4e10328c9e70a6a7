#include "roughcpd/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace roughcpd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_univariate(const TimeSeries& series, std::string_view what) {
    if (series.dims() != 1)
        throw std::invalid_argument(std::string(what) + " regularity needs a univariate series (p = " +
                                    std::to_string(series.dims()) + ")");
}

void require_index(std::size_t t, std::size_t T) {
    if (t < 1 || t > T) throw std::out_of_range("time index " + std::to_string(t) + " outside 1.." + std::to_string(T));
}

std::span<const double> slice(const std::vector<double>& x, std::size_t first, std::size_t last) {
    if (last < first) return {};
    return std::span<const double>(x).subspan(first - 1, last - first + 1);
}

struct Moments {
    double mean = 0.0;
    double ss = 0.0;  // sum of squared deviations
    double scale = 0.0;
};

Moments moments(std::span<const double> x) {
    Moments m;
    for (double v : x) {
        m.mean += v;
        m.scale = std::max(m.scale, std::abs(v));
    }
    m.mean /= static_cast<double>(x.size());
    for (double v : x) m.ss += (v - m.mean) * (v - m.mean);
    return m;
}

double reciprocal(double stat) {
    if (std::isinf(stat)) return std::numeric_limits<double>::min();
    return 1.0 / (1.0 + stat);
}

}  // namespace

WindowPair windows_at(std::size_t t, int delta_reg, std::size_t T) {
    require_index(t, T);
    if (delta_reg < 1) throw std::invalid_argument("delta_reg must be positive");
    const auto d = static_cast<std::size_t>(delta_reg);
    WindowPair w;
    w.left_first = t >= d ? t - d + 1 : 1;
    w.left_last = t;
    w.right_first = t + 1;
    w.right_last = std::min(T, t + d);
    return w;
}

Measure parse_measure(std::string_view name) {
    if (name == "ks") return Measure::KolmogorovSmirnov;
    if (name == "t") return Measure::TTest;
    if (name == "hotelling") return Measure::Hotelling;
    throw std::invalid_argument("unknown regularity measure '" + std::string(name) + "' (expected ks, t or hotelling)");
}

std::string measure_name(Measure m) {
    switch (m) {
        case Measure::KolmogorovSmirnov: return "ks";
        case Measure::TTest: return "t";
        case Measure::Hotelling: return "hotelling";
    }
    return "unknown";
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS statistic needs two nonempty samples");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double t_statistic_squared(std::span<const double> a, std::span<const double> b, bool welch) {
    const auto n1 = static_cast<double>(a.size());
    const auto n2 = static_cast<double>(b.size());
    if (a.empty() || b.empty() || a.size() + b.size() < 3)
        throw std::invalid_argument("t statistic needs nonempty samples with at least 3 points in total");
    if (welch && (a.size() < 2 || b.size() < 2))
        throw std::invalid_argument("Welch t statistic needs at least 2 points per sample");
    const Moments ma = moments(a);
    const Moments mb = moments(b);
    const double scale = std::max({ma.scale, mb.scale, std::numeric_limits<double>::min()});
    const double diff = ma.mean - mb.mean;
    double var = 0.0;
    if (welch) {
        var = ma.ss / (n1 - 1.0) / n1 + mb.ss / (n2 - 1.0) / n2;
    } else {
        var = (ma.ss + mb.ss) / (n1 + n2 - 2.0) * (1.0 / n1 + 1.0 / n2);
    }
    const double tiny = 64.0 * kEps * scale;
    if (var <= tiny * tiny) {
        return std::abs(diff) <= tiny ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff * diff / var;
}

double hotelling_regularity(const TimeSeries& series, std::size_t t, int delta_reg, std::optional<double> ridge) {
    const auto win = windows_at(t, delta_reg, series.length());
    if (win.left_size() < 2 || win.right_size() < 2)
        throw std::invalid_argument("Hotelling regularity needs at least 2 points in each window at t = " +
                                    std::to_string(t));
    if (ridge && *ridge < 0.0) throw std::invalid_argument("ridge must be >= 0");
    const auto p = static_cast<Eigen::Index>(series.dims());
    const auto n1 = static_cast<double>(win.left_size());
    const auto n2 = static_cast<double>(win.right_size());

    Eigen::VectorXd m1 = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd m2 = Eigen::VectorXd::Zero(p);
    for (std::size_t u = win.left_first; u <= win.left_last; ++u)
        m1 += Eigen::Map<const Eigen::VectorXd>(series.row(u).data(), p);
    for (std::size_t u = win.right_first; u <= win.right_last; ++u)
        m2 += Eigen::Map<const Eigen::VectorXd>(series.row(u).data(), p);
    m1 /= n1;
    m2 /= n2;
    const Eigen::VectorXd mid = 0.5 * (m1 + m2);

    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t u = win.left_first; u <= win.right_last; ++u) {
        const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(series.row(u).data(), p) - mid;
        sigma.noalias() += c * c.transpose();
    }
    sigma /= 0.5 * (n1 + n2);

    const Eigen::VectorXd diff = m1 - m2;
    if (diff.isZero(0.0)) return 1.0;

    const double r = ridge ? *ridge : 1e-8 * sigma.trace() / static_cast<double>(p);
    sigma.diagonal().array() += r;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(hi > 0.0) || lo <= 1e-13 * hi)
        throw std::domain_error("Hotelling covariance is singular at t = " + std::to_string(t) +
                                "; pass a positive ridge");
    const double stat = diff.dot(sigma.ldlt().solve(diff));
    return reciprocal(stat);
}

double ttest_regularity(const TimeSeries& series, std::size_t t, int delta_reg, bool welch) {
    require_univariate(series, "t-test");
    const auto win = windows_at(t, delta_reg, series.length());
    if (win.left_size() < 2 || win.right_size() < 2)
        throw std::invalid_argument("t-test regularity needs at least 2 points in each window at t = " +
                                    std::to_string(t));
    const auto& x = series.values();
    return reciprocal(t_statistic_squared(slice(x, win.left_first, win.left_last),
                                          slice(x, win.right_first, win.right_last), welch));
}

double ks_regularity(const TimeSeries& series, std::size_t t, int delta_reg) {
    require_univariate(series, "KS");
    const auto win = windows_at(t, delta_reg, series.length());
    if (win.right_size() == 0) throw std::invalid_argument("KS regularity needs a nonempty right window (t < T)");
    const auto& x = series.values();
    return 1.0 / (1.0 + ks_statistic(slice(x, win.left_first, win.left_last),
                                     slice(x, win.right_first, win.right_last)));
}

RegularityCurve regularity_curve(const TimeSeries& series, int delta_reg, Measure measure,
                                 const MeasureOptions& options) {
    const std::size_t T = series.length();
    if (delta_reg < 1) throw std::invalid_argument("delta_reg must be positive");

    // Each window must hold this many points for the measure to be defined.
    const std::size_t min_window = measure == Measure::KolmogorovSmirnov ? 1 : 2;
    if (measure != Measure::Hotelling) require_univariate(series, measure_name(measure));
    if (T < 2 * min_window)
        throw std::invalid_argument("series of length " + std::to_string(T) + " is too short for the " +
                                    measure_name(measure) + " measure");
    const std::size_t first = min_window;
    const std::size_t last = T - min_window;

    RegularityCurve curve;
    curve.delta_reg = delta_reg;
    curve.measure_name = measure_name(measure);
    curve.values.assign(T, 0.0);
    for (std::size_t t = first; t <= last; ++t) {
        double r = 0.0;
        switch (measure) {
            case Measure::KolmogorovSmirnov: r = ks_regularity(series, t, delta_reg); break;
            case Measure::TTest: r = ttest_regularity(series, t, delta_reg, options.welch); break;
            case Measure::Hotelling: r = hotelling_regularity(series, t, delta_reg, options.ridge); break;
        }
        curve.values[t - 1] = r;
    }
    for (std::size_t t = 1; t < first; ++t) curve.values[t - 1] = curve.values[first - 1];
    for (std::size_t t = last + 1; t <= T; ++t) curve.values[t - 1] = curve.values[last - 1];
    return curve;
}

RegularityCurve regularity_curve(const TimeSeries& series, int delta_reg, std::string_view measure,
                                 const MeasureOptions& options) {
    return regularity_curve(series, delta_reg, parse_measure(measure), options);
}

}  // namespace roughcpd
