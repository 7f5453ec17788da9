#include "mgarch/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mgarch {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim whitespace and a trailing \r
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{} || p != e) return false;
    return std::isfinite(out);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

RawTable load_csv(const std::filesystem::path& path, const IngestConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    const auto header = split_csv_line(line);
    if (header.size() < 2 || lower(header[0]) != "date")
        throw std::runtime_error(path.string() +
                                 ": malformed header (want `date` plus >=1 value column)");

    RawTable table;
    table.names.assign(header.begin() + 1, header.end());
    for (const auto& name : table.names) {
        auto it = config.kind_overrides.find(name);
        table.kinds.push_back(it != config.kind_overrides.end() ? it->second
                                                                : config.default_kind);
    }

    std::vector<std::vector<double>> cols(table.names.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            if (config.skip_bad_rows) {
                ++table.skipped_rows;
                continue;
            }
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": wrong field count");
        }
        const auto date = Date::parse(fields[0]);
        std::vector<double> row(cols.size());
        bool ok = date.has_value();
        for (std::size_t j = 0; ok && j < cols.size(); ++j) ok = parse_number(fields[j + 1], row[j]);
        if (!ok) {
            if (config.skip_bad_rows) {
                ++table.skipped_rows;
                continue;
            }
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": unparseable cell");
        }
        table.dates.push_back(*date);
        for (std::size_t j = 0; j < cols.size(); ++j) cols[j].push_back(row[j]);
    }

    for (std::size_t i = 1; i < table.dates.size(); ++i)
        if (!(table.dates[i - 1] < table.dates[i]))
            throw std::runtime_error(path.string() + ": non-monotone dates at " +
                                     table.dates[i].str());

    table.columns.reserve(cols.size());
    for (auto& c : cols)
        table.columns.push_back(Eigen::Map<Eigen::VectorXd>(c.data(), static_cast<long>(c.size())));
    return table;
}

std::vector<ReturnSeries> to_returns(const RawTable& table, ReturnMethod method, Unit scale) {
    const double mult = scale == Unit::Percent ? 100.0 : 1.0;
    std::vector<ReturnSeries> out;
    out.reserve(table.names.size());
    for (std::size_t j = 0; j < table.names.size(); ++j) {
        const auto& col = table.columns[j];
        ReturnSeries s;
        s.name = table.names[j];
        s.unit = scale;
        if (table.kinds[j] == ColumnKind::Return) {
            s.dates = table.dates;
            s.values = col;
        } else {
            if (col.size() < 2)
                throw std::invalid_argument("price column '" + s.name +
                                            "' too short to difference");
            s.dates.assign(table.dates.begin() + 1, table.dates.end());
            s.values.resize(col.size() - 1);
            for (Eigen::Index t = 1; t < col.size(); ++t) {
                if (method == ReturnMethod::Log) {
                    if (!(col[t] > 0.0) || !(col[t - 1] > 0.0))
                        throw std::invalid_argument("non-positive price in column '" + s.name +
                                                    "' under log returns");
                    s.values[t - 1] = mult * std::log(col[t] / col[t - 1]);
                } else {
                    if (col[t - 1] == 0.0)
                        throw std::invalid_argument("zero price in column '" + s.name +
                                                    "' under simple returns");
                    s.values[t - 1] = mult * (col[t] / col[t - 1] - 1.0);
                }
            }
        }
        s.validate();
        out.push_back(std::move(s));
    }
    return out;
}

AlignedPanel align(const std::vector<ReturnSeries>& series, AlignPolicy policy) {
    if (series.size() < 2) throw std::invalid_argument("align requires >=2 series");
    for (const auto& s : series) s.validate();

    std::vector<Date> common = series[0].dates;
    if (policy == AlignPolicy::Strict) {
        for (const auto& s : series)
            if (s.dates != common)
                throw std::runtime_error("date mismatch between '" + series[0].name + "' and '" +
                                         s.name + "' under strict alignment");
    } else {
        for (std::size_t i = 1; i < series.size(); ++i) {
            std::vector<Date> next;
            std::set_intersection(common.begin(), common.end(), series[i].dates.begin(),
                                  series[i].dates.end(), std::back_inserter(next));
            common = std::move(next);
        }
        if (common.empty()) throw std::runtime_error("empty date intersection across series");
    }

    AlignedPanel panel;
    panel.dates = common;
    panel.values.resize(static_cast<Eigen::Index>(common.size()),
                        static_cast<Eigen::Index>(series.size()));
    for (std::size_t j = 0; j < series.size(); ++j) {
        const auto s = convert_scale(series[j], Unit::Percent);
        panel.names.push_back(s.name);
        std::size_t k = 0;
        for (std::size_t t = 0; t < s.dates.size(); ++t) {
            if (k < common.size() && s.dates[t] == common[k]) {
                panel.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
                    s.values[static_cast<Eigen::Index>(t)];
                ++k;
            }
        }
    }
    panel.validate();
    return panel;
}

void write_panel_csv(const std::filesystem::path& path, const AlignedPanel& panel) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << "date";
    for (const auto& n : panel.names) out << ',' << n;
    out << '\n';
    out.precision(17);
    for (Eigen::Index t = 0; t < panel.T(); ++t) {
        out << panel.dates[static_cast<std::size_t>(t)].str();
        for (Eigen::Index j = 0; j < panel.width(); ++j) out << ',' << panel.values(t, j);
        out << '\n';
    }
}

}  // namespace mgarch
