#include "roughcpd/series_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace roughcpd {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "invalid detector parameters:";
    for (const auto& s : v) {
        out += "\n  - ";
        out += s;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

bool nearly_equal_or_nan(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double json_real(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

}  // namespace

ParamError::ParamError(std::vector<std::string> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

TimeSeries::TimeSeries(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ < 2) throw std::invalid_argument("time series needs at least 2 observations");
    if (cols_ < 1) throw std::invalid_argument("time series needs at least 1 column");
    if (values_.size() != rows_ * cols_)
        throw std::invalid_argument("time series data size does not match rows x cols");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw std::invalid_argument("non-finite value at row " + std::to_string(i / cols_ + 1) +
                                        ", column " + std::to_string(i % cols_ + 1));
    }
}

TimeSeries TimeSeries::univariate(std::vector<double> values) {
    const auto n = values.size();
    return TimeSeries(n, 1, std::move(values));
}

std::span<const double> TimeSeries::row(std::size_t t) const {
    return std::span<const double>(values_).subspan((t - 1) * cols_, cols_);
}

std::vector<double> TimeSeries::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t t = 0; t < rows_; ++t) out[t] = values_[t * cols_ + j];
    return out;
}

DetectorParams validate_params(const DetectorParams& params, std::size_t T) {
    std::vector<std::string> v;
    const double Td = static_cast<double>(T);
    if (params.delta_reg < 1) v.push_back("delta_reg must be a positive integer (got " + std::to_string(params.delta_reg) + ")");
    if (!(params.big_delta > 0.0)) v.push_back("big_delta must be > 0 (got " + format_real(params.big_delta) + ")");
    if (!(params.w > 0.0)) v.push_back("w must be > 0 (got " + format_real(params.w) + ")");
    if (!(params.beta > 1.0)) v.push_back("beta must exceed 1 (got " + format_real(params.beta) + ")");
    if (!(params.alpha > 0.0 && params.alpha < 1.0))
        v.push_back("alpha must lie in (0,1) (got " + format_real(params.alpha) + ")");
    if (2.0 * params.delta_reg >= Td)
        v.push_back("2*delta_reg must be < T (2*" + std::to_string(params.delta_reg) + " >= " + std::to_string(T) + ")");
    if (!(params.big_delta + 2.0 * params.w < Td / 2.0))
        v.push_back("big_delta + 2*w must be < T/2 (" + format_real(params.big_delta) + " + 2*" +
                    format_real(params.w) + " >= " + format_real(Td / 2.0) + ")");
    if (!v.empty()) throw ParamError(std::move(v));
    return params;
}

bool same_report(const ChangepointReport& a, const ChangepointReport& b) {
    if (a.candidates.size() != b.candidates.size()) return false;
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
        const auto& x = a.candidates[i];
        const auto& y = b.candidates[i];
        if (x.s != y.s || x.accepted != y.accepted || x.degenerate != y.degenerate) return false;
        if (!nearly_equal_or_nan(x.entropy, y.entropy) || !nearly_equal_or_nan(x.h_star, y.h_star) ||
            !nearly_equal_or_nan(x.sigma_star, y.sigma_star) || !nearly_equal_or_nan(x.z, y.z))
            return false;
    }
    return a.params == b.params && a.measure_name == b.measure_name &&
           nearly_equal_or_nan(a.null_mu, b.null_mu) && nearly_equal_or_nan(a.normalizer, b.normalizer) &&
           a.warnings == b.warnings;
}

TimeSeries parse_csv(const std::string& text, bool has_header) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool header_pending = has_header;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto cells = split_commas(line);
        if (cols == 0) {
            cols = cells.size();
        } else if (cells.size() != cols) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                             " columns, found " + std::to_string(cells.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const auto cell = cells[j];
            double x = 0.0;
            const auto* first = cell.data();
            const auto* last = cell.data() + cell.size();
            if (!cell.empty() && *first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, last, x);
            if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(x)) {
                throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                                 ": '" + std::string(cell) + "' is not a finite real");
            }
            values.push_back(x);
        }
        ++rows;
    }
    if (rows == 0) throw ParseError("no data rows");
    if (rows < 2) throw ParseError("need at least 2 data rows, found 1");
    return TimeSeries(rows, cols, std::move(values));
}

TimeSeries load_csv(const std::filesystem::path& path, bool has_header) {
    return parse_csv(read_text(path), has_header);
}

std::string series_to_csv(const TimeSeries& series) {
    std::string out;
    for (std::size_t t = 1; t <= series.length(); ++t) {
        const auto r = series.row(t);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out += ',';
            out += format_real(r[j]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const TimeSeries& series, const std::filesystem::path& path) {
    write_text(path, series_to_csv(series));
}

std::string format_real(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string report_to_json(const ChangepointReport& r) {
    std::string o;
    o += "{\n  \"candidates\": [";
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        const auto& c = r.candidates[i];
        o += i ? ",\n    {" : "\n    {";
        o += "\"s\": " + std::to_string(c.s);
        o += ", \"entropy\": " + format_real(c.entropy);
        o += ", \"h_star\": " + format_real(c.h_star);
        o += ", \"sigma_star\": " + format_real(c.sigma_star);
        o += ", \"z\": " + format_real(c.z);
        o += std::string(", \"accepted\": ") + (c.accepted ? "true" : "false");
        o += std::string(", \"degenerate\": ") + (c.degenerate ? "true" : "false");
        o += "}";
    }
    o += r.candidates.empty() ? "],\n" : "\n  ],\n";
    o += "  \"params\": {";
    o += "\"delta_reg\": " + std::to_string(r.params.delta_reg);
    o += ", \"big_delta\": " + format_real(r.params.big_delta);
    o += ", \"w\": " + format_real(r.params.w);
    o += ", \"beta\": " + format_real(r.params.beta);
    o += ", \"alpha\": " + format_real(r.params.alpha);
    o += "},\n";
    o += "  \"measure_name\": " + nlohmann::json(r.measure_name).dump() + ",\n";
    o += "  \"null_mu\": " + format_real(r.null_mu) + ",\n";
    o += "  \"normalizer\": " + format_real(r.normalizer) + ",\n";
    o += "  \"warnings\": " + nlohmann::json(r.warnings).dump() + "\n";
    o += "}\n";
    return o;
}

std::string report_to_csv(const ChangepointReport& r) {
    std::string o = "s,entropy,h_star,sigma_star,z,accepted,degenerate\n";
    for (const auto& c : r.candidates) {
        o += std::to_string(c.s) + ',' + format_real(c.entropy) + ',' + format_real(c.h_star) + ',' +
             format_real(c.sigma_star) + ',' + format_real(c.z) + ',' + (c.accepted ? "1" : "0") + ',' +
             (c.degenerate ? "1" : "0") + '\n';
    }
    return o;
}

ChangepointReport parse_report(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
    try {
        ChangepointReport r;
        for (const auto& c : j.at("candidates")) {
            Candidate k;
            k.s = c.at("s").get<std::size_t>();
            k.entropy = json_real(c.at("entropy"));
            k.h_star = json_real(c.at("h_star"));
            k.sigma_star = json_real(c.at("sigma_star"));
            k.z = json_real(c.at("z"));
            k.accepted = c.at("accepted").get<bool>();
            k.degenerate = c.value("degenerate", false);
            r.candidates.push_back(k);
        }
        const auto& p = j.at("params");
        r.params.delta_reg = p.at("delta_reg").get<int>();
        r.params.big_delta = json_real(p.at("big_delta"));
        r.params.w = json_real(p.at("w"));
        r.params.beta = json_real(p.at("beta"));
        r.params.alpha = json_real(p.at("alpha"));
        r.measure_name = j.at("measure_name").get<std::string>();
        r.null_mu = json_real(j.at("null_mu"));
        r.normalizer = json_real(j.at("normalizer"));
        if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report is missing or mistypes a field: ") + e.what());
    }
}

void write_report(const ChangepointReport& report, const std::filesystem::path& path) {
    write_text(path, report_to_json(report));
}

ChangepointReport read_report(const std::filesystem::path& path) { return parse_report(read_text(path)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace roughcpd
