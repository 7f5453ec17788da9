#include "mgarch/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace mgarch::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw UsageError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (auto& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    return out;
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& file) {
    std::filesystem::path dir = cfg.output_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("MGARCH_OUTPUT_DIR")) dir = env;
        else dir = ".";
    }
    std::filesystem::create_directories(dir);
    return dir / file;
}

bool wants(const RunConfig& cfg, Format f) { return cfg.formats.count(f) > 0; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << text;
}

}  // namespace

void RunConfig::validate() const {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& p : pairs) {
        if (p.first == p.second)
            throw UsageError("pair '" + p.first + ":" + p.second + "' names the same column twice");
        if (!seen.insert(p).second)
            throw UsageError("duplicate pair '" + p.first + ":" + p.second + "'");
    }
    if (workers < 1) throw UsageError("workers must be >= 1");
    if (portmanteau_lags < 1 || acf_lags < 1 || adf_lags < 0)
        throw UsageError("lag settings must be positive");
    try {
        optimizer.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::map<std::string, std::string> read_kv_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path.string() + ":" + std::to_string(lineno) +
                             ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError(path.string() + ": empty key");
        kv[key] = value;
    }
    return kv;
}

void apply_kv(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, v] : kv) {
        if (key == "input") cfg.input = v;
        else if (key == "columns") cfg.columns = split(v, ',');
        else if (key == "pairs") {
            cfg.pairs.clear();
            for (const auto& item : split(v, ',')) {
                const auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw UsageError("pairs: expected `a:b`, got '" + item + "'");
                cfg.pairs.emplace_back(trim(item.substr(0, colon)), trim(item.substr(colon + 1)));
            }
        } else if (key == "skip_bad_rows") cfg.ingest.skip_bad_rows = parse_bool(key, v);
        else if (key == "kind") {
            if (v == "price") cfg.ingest.default_kind = ColumnKind::Price;
            else if (v == "return") cfg.ingest.default_kind = ColumnKind::Return;
            else throw UsageError("kind: expected price|return");
        } else if (key.rfind("kind.", 0) == 0) {
            const std::string col = key.substr(5);
            if (v == "price") cfg.ingest.kind_overrides[col] = ColumnKind::Price;
            else if (v == "return") cfg.ingest.kind_overrides[col] = ColumnKind::Return;
            else throw UsageError(key + ": expected price|return");
        } else if (key == "method") {
            if (v == "log") cfg.method = ReturnMethod::Log;
            else if (v == "simple") cfg.method = ReturnMethod::Simple;
            else throw UsageError("method: expected log|simple");
        } else if (key == "scale") {
            if (v == "percent") cfg.scale = Unit::Percent;
            else if (v == "decimal") cfg.scale = Unit::Decimal;
            else throw UsageError("scale: expected percent|decimal");
        } else if (key == "align") {
            if (v == "intersect") cfg.align_policy = AlignPolicy::Intersect;
            else if (v == "strict") cfg.align_policy = AlignPolicy::Strict;
            else throw UsageError("align: expected intersect|strict");
        } else if (key == "ma_filter") cfg.ma_filter = parse_bool(key, v);
        else if (key == "distribution") {
            if (v == "gaussian") cfg.distribution = Distribution::Gaussian;
            else if (v == "student_t") cfg.distribution = Distribution::StudentT;
            else throw UsageError("distribution: expected gaussian|student_t");
        } else if (key == "mean_mode") {
            if (v == "joint") cfg.mean_mode = MeanMode::Joint;
            else if (v == "two_step") cfg.mean_mode = MeanMode::TwoStep;
            else throw UsageError("mean_mode: expected joint|two_step");
        } else if (key == "max_iterations") cfg.optimizer.max_iterations = static_cast<int>(parse_int(key, v));
        else if (key == "gradient_tolerance") cfg.optimizer.gradient_tolerance = parse_double(key, v);
        else if (key == "step_tolerance") cfg.optimizer.step_tolerance = parse_double(key, v);
        else if (key == "fd_step") cfg.optimizer.fd_step = parse_double(key, v);
        else if (key == "restarts") cfg.optimizer.restarts = static_cast<int>(parse_int(key, v));
        else if (key == "seed") cfg.optimizer.seed = static_cast<std::uint64_t>(parse_int(key, v));
        else if (key == "portmanteau_lags") cfg.portmanteau_lags = static_cast<int>(parse_int(key, v));
        else if (key == "acf_lags") cfg.acf_lags = static_cast<int>(parse_int(key, v));
        else if (key == "adf_lags") cfg.adf_lags = static_cast<int>(parse_int(key, v));
        else if (key == "adf_spec") {
            if (v == "constant") cfg.adf_spec = AdfSpec::Constant;
            else if (v == "constant_trend") cfg.adf_spec = AdfSpec::ConstantTrend;
            else throw UsageError("adf_spec: expected constant|constant_trend");
        } else if (key == "lilliefors") cfg.lilliefors = parse_bool(key, v);
        else if (key == "output_dir") cfg.output_dir = v;
        else if (key == "formats") {
            cfg.formats.clear();
            for (const auto& f : split(v, ',')) {
                if (f == "json") cfg.formats.insert(Format::Json);
                else if (f == "csv") cfg.formats.insert(Format::Csv);
                else if (f == "text") cfg.formats.insert(Format::Text);
                else throw UsageError("formats: expected json|csv|text");
            }
        } else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, v));
        else if (key == "model") cfg.model_file = v;
        else throw UsageError("unknown config key '" + key + "'");
    }
}

AlignedPanel load_panel(const RunConfig& cfg) {
    RawTable table;
    try {
        table = load_csv(cfg.input, cfg.ingest);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    std::vector<ReturnSeries> series;
    try {
        series = to_returns(table, cfg.method, cfg.scale);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    if (!cfg.columns.empty()) {
        std::vector<ReturnSeries> selected;
        for (const auto& want : cfg.columns) {
            const auto it = std::find_if(series.begin(), series.end(),
                                         [&](const ReturnSeries& s) { return s.name == want; });
            if (it == series.end()) throw UsageError("column '" + want + "' not found in input");
            selected.push_back(*it);
        }
        series = std::move(selected);
    }
    if (series.size() < 2) throw DataError("need at least two value columns");
    try {
        return align(series, cfg.align_policy);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
}

namespace {

report::Json test_battery(const Eigen::VectorXd& x, const RunConfig& cfg) {
    report::Json j;
    const int L = cfg.portmanteau_lags;
    j["ljung_box"] = report::to_json(ljung_box(x, L));
    j["ljung_box_squared"] = report::to_json(ljung_box(x.array().square(), L));
    j["lm_arch"] = report::to_json(lm_arch(x, L));
    j["adf"] = report::to_json(adf_test(x, cfg.adf_lags, cfg.adf_spec));
    return j;
}

std::vector<TestResult> battery_for_text(const Eigen::VectorXd& x, const RunConfig& cfg,
                                         const char* suffix) {
    const int L = cfg.portmanteau_lags;
    const std::string l = std::to_string(L);
    auto q = ljung_box(x, L);
    q.name = "Q(" + l + ")-" + suffix;
    auto q2 = ljung_box(x.array().square(), L);
    q2.name = "Q2(" + l + ")-" + suffix;
    auto arch = lm_arch(x, L);
    arch.name = "ARCH(" + l + ")-" + suffix;
    auto adf = adf_test(x, cfg.adf_lags, cfg.adf_spec);
    adf.name = "ADF(" + std::to_string(cfg.adf_lags) + ")";
    return {q, q2, arch, adf};
}

}  // namespace

void run_describe(const RunConfig& cfg) {
    cfg.validate();
    const auto panel = load_panel(cfg);

    report::Json j;
    j["schema_version"] = report::kSchemaVersion;
    j["T"] = panel.T();
    j["skipped_rows"] = 0;  // load_panel rejects unless skipping enabled
    report::Json series = report::Json::object();
    std::string text;
    for (Eigen::Index i = 0; i < panel.width(); ++i) {
        const auto& name = panel.names[static_cast<std::size_t>(i)];
        const auto m = moment_summary(panel.values.col(i));
        report::Json sj;
        sj["moments"] = report::to_json(m);
        const auto a_r = acf(panel.values.col(i), cfg.acf_lags);
        const auto a_s = acf(panel.values.col(i).array().square(), cfg.acf_lags);
        sj["acf_band"] = a_r.band;
        series[name] = std::move(sj);
        if (wants(cfg, Format::Csv)) {
            report::write_acf_csv(out_path(cfg, "acf_" + sanitize(name) + "_returns.csv"), a_r);
            report::write_acf_csv(out_path(cfg, "acf_" + sanitize(name) + "_squared.csv"), a_s);
        }
        std::ostringstream os;
        os << "--- " << name << " ---\n"
           << "  mean " << m.mean << "  variance " << m.variance << "  skewness " << m.skewness
           << "  excess_kurtosis " << m.excess_kurtosis << "  T " << m.T << '\n';
        text += os.str();
    }
    j["series"] = std::move(series);
    const auto corr = correlation_matrix(panel);
    j["correlation_matrix"] = report::to_json(corr);

    if (wants(cfg, Format::Json)) report::write_json(out_path(cfg, "describe.json"), j);
    if (wants(cfg, Format::Text)) write_text(out_path(cfg, "describe.txt"), text);
}

namespace {

struct LoadedModel {
    std::array<std::string, 2> pair;
    VarMeanParams mean;
    BekkParameters bekk;
    bool ma_applied = false;
    std::map<std::string, std::pair<double, double>> ma;  // name -> (theta, mu)
};

LoadedModel load_model(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open model file: " + file.string());
    report::Json j;
    try {
        j = report::Json::parse(in);
    } catch (const std::exception& e) {
        throw DataError("model file parse error: " + std::string(e.what()));
    }
    try {
        LoadedModel m;
        m.pair = {j.at("pair").at(0).get<std::string>(), j.at("pair").at(1).get<std::string>()};
        const auto& est = j.at("estimation");
        const auto& pa = est.at("panel_a");
        m.mean.c[0] = pa.at("C11").at("estimate").get<double>();
        m.mean.phi(0, 0) = pa.at("r11").at("estimate").get<double>();
        m.mean.phi(0, 1) = pa.at("r21").at("estimate").get<double>();
        m.mean.c[1] = pa.at("C22").at("estimate").get<double>();
        m.mean.phi(1, 1) = pa.at("r22").at("estimate").get<double>();
        m.mean.phi(1, 0) = pa.at("r12").at("estimate").get<double>();
        const auto& pb = est.at("panel_b");
        m.bekk.C(0, 0) = pb.at("C11").at("estimate").get<double>();
        m.bekk.C(0, 1) = pb.at("C12").at("estimate").get<double>();
        m.bekk.C(1, 1) = pb.at("C22").at("estimate").get<double>();
        m.bekk.A(0, 0) = pb.at("a11").at("estimate").get<double>();
        m.bekk.A(0, 1) = pb.at("a12").at("estimate").get<double>();
        m.bekk.A(1, 0) = pb.at("a21").at("estimate").get<double>();
        m.bekk.A(1, 1) = pb.at("a22").at("estimate").get<double>();
        m.bekk.B(0, 0) = pb.at("b11").at("estimate").get<double>();
        m.bekk.B(0, 1) = pb.at("b12").at("estimate").get<double>();
        m.bekk.B(1, 0) = pb.at("b21").at("estimate").get<double>();
        m.bekk.B(1, 1) = pb.at("b22").at("estimate").get<double>();
        if (pb.contains("nu")) m.bekk.nu = pb.at("nu").at("estimate").get<double>();
        if (j.contains("ma_filter") && j.at("ma_filter").at("applied").get<bool>()) {
            m.ma_applied = true;
            for (const auto& [name, v] : j.at("ma_filter").at("series").items())
                m.ma[name] = {v.at("theta").get<double>(), v.at("mu").get<double>()};
        }
        return m;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError("model file missing fields: " + std::string(e.what()));
    }
}

}  // namespace

void run_diagnose(const RunConfig& cfg) {
    cfg.validate();
    const auto panel = load_panel(cfg);

    report::Json j;
    j["schema_version"] = report::kSchemaVersion;
    j["T"] = panel.T();
    std::string text;

    report::Json raw = report::Json::object();
    report::Json filtered = report::Json::object();
    for (Eigen::Index i = 0; i < panel.width(); ++i) {
        const auto& name = panel.names[static_cast<std::size_t>(i)];
        raw[name] = test_battery(panel.values.col(i), cfg);
        text += report::render_tests_text(name + " (raw returns)",
                                          battery_for_text(panel.values.col(i), cfg, "R"));
        const auto ma = fit_ma1(panel.values.col(i));
        report::Json fj = test_battery(ma.residuals, cfg);
        fj["ma_theta"] = ma.theta;
        fj["ma_mu"] = ma.mu;
        filtered[name] = std::move(fj);
        text += report::render_tests_text(name + " (MA(1)-filtered)",
                                          battery_for_text(ma.residuals, cfg, "R"));
    }
    j["raw_returns"] = std::move(raw);
    j["ma_filtered_returns"] = std::move(filtered);

    if (!cfg.model_file.empty()) {
        const auto model = load_model(cfg.model_file);
        Eigen::Index idx[2];
        for (int k = 0; k < 2; ++k) {
            const auto it = std::find(panel.names.begin(), panel.names.end(), model.pair[k]);
            if (it == panel.names.end())
                throw DataError("model pair column '" + model.pair[k] + "' not in input");
            idx[k] = it - panel.names.begin();
        }
        MatX2 y = panel.pair(idx[0], idx[1]);
        if (model.ma_applied) {
            for (int k = 0; k < 2; ++k) {
                const auto it = model.ma.find(model.pair[k]);
                if (it == model.ma.end())
                    throw DataError("model file lacks MA parameters for '" + model.pair[k] + "'");
                y.col(k) = ma1_residuals(y.col(k), it->second.second, it->second.first);
            }
        }
        const MatX2 eps = var_residual_values(model.mean, y);
        const MatX2 z = standardized_residuals(model.bekk, eps, sample_covariance(eps));

        report::Json post = report::Json::object();
        post["pair"] = {model.pair[0], model.pair[1]};
        for (int k = 0; k < 2; ++k) {
            const auto& name = model.pair[k];
            const Eigen::VectorXd zk = z.col(k);
            report::Json tj;
            const int L = cfg.portmanteau_lags;
            tj["ljung_box"] = report::to_json(ljung_box(zk, L));
            tj["ljung_box_squared"] = report::to_json(ljung_box(zk.array().square(), L));
            tj["lm_arch"] = report::to_json(lm_arch(zk, L));
            tj["jarque_bera"] = report::to_json(jarque_bera(zk));
            const auto m = moment_summary(zk);
            tj["skewness"] = m.skewness;
            tj["excess_kurtosis"] = m.excess_kurtosis;
            post[name] = std::move(tj);

            const std::string l = std::to_string(L);
            auto q = ljung_box(zk, L);
            q.name = "Q(" + l + ")-Z";
            auto q2 = ljung_box(zk.array().square(), L);
            q2.name = "Q2(" + l + ")-Z";
            auto arch = lm_arch(zk, L);
            arch.name = "ARCH(" + l + ")-Z";
            auto jb = jarque_bera(zk);
            jb.name = "JB-Z";
            text += report::render_tests_text(name + " (standardized residuals)",
                                              {q, q2, arch, jb});
        }
        j["post_fit"] = std::move(post);
    }

    if (wants(cfg, Format::Json)) report::write_json(out_path(cfg, "diagnose.json"), j);
    if (wants(cfg, Format::Text)) write_text(out_path(cfg, "diagnose.txt"), text);
}

namespace {

struct PairOutcome {
    std::string label;
    report::Json json;
    std::string text;
    ConditionalPath path;
    bool converged = false;
    std::string error;  // non-empty on hard failure
};

}  // namespace

bool run_fit(const RunConfig& cfg) {
    cfg.validate();
    const auto panel = load_panel(cfg);
    if (panel.T() < 50) throw DataError("panel too short for estimation (T < 50)");

    std::vector<std::pair<Eigen::Index, Eigen::Index>> idx_pairs;
    if (cfg.pairs.empty()) {
        if (panel.width() != 2)
            throw UsageError("no pairs configured and input has more than two columns");
        idx_pairs.emplace_back(0, 1);
    } else {
        for (const auto& p : cfg.pairs) {
            const auto find = [&](const std::string& n) -> Eigen::Index {
                const auto it = std::find(panel.names.begin(), panel.names.end(), n);
                if (it == panel.names.end())
                    throw UsageError("pair column '" + n + "' not found in input");
                return it - panel.names.begin();
            };
            idx_pairs.emplace_back(find(p.first), find(p.second));
        }
    }

    const auto process = [&](std::size_t k) -> PairOutcome {
        PairOutcome out;
        const auto [i, jcol] = idx_pairs[k];
        const std::string n1 = panel.names[static_cast<std::size_t>(i)];
        const std::string n2 = panel.names[static_cast<std::size_t>(jcol)];
        out.label = n1 + "__" + n2;
        try {
            MatX2 y = panel.pair(i, jcol);
            report::Json ma_j;
            ma_j["applied"] = cfg.ma_filter;
            if (cfg.ma_filter) {
                report::Json ser = report::Json::object();
                for (int c = 0; c < 2; ++c) {
                    const auto ma = fit_ma1(y.col(c));
                    y.col(c) = ma.residuals;
                    report::Json mj;
                    mj["theta"] = ma.theta;
                    mj["mu"] = ma.mu;
                    mj["loglik"] = ma.loglik;
                    ser[c == 0 ? n1 : n2] = std::move(mj);
                }
                ma_j["series"] = std::move(ser);
            }

            const auto fit = fit_bekk(y, cfg.optimizer, cfg.distribution, cfg.mean_mode);
            out.converged = fit.converged;
            out.path = fitted_path(fit, y, panel.dates);
            const auto summary = correlation_summary(out.path, cfg.lilliefors);

            out.json["schema_version"] = report::kSchemaVersion;
            out.json["pair"] = {n1, n2};
            out.json["T"] = panel.T();
            out.json["ma_filter"] = std::move(ma_j);
            out.json["estimation"] = report::to_json(fit);
            out.json["correlation_summary"] = report::to_json(summary);
            out.text = report::render_estimation_text(fit, n1 + " - " + n2);
        } catch (const std::exception& e) {
            out.error = e.what();
        }
        return out;
    };

    std::vector<PairOutcome> outcomes(idx_pairs.size());
    const int workers = std::min<int>(cfg.workers, static_cast<int>(idx_pairs.size()));
    if (workers <= 1) {
        for (std::size_t k = 0; k < idx_pairs.size(); ++k) outcomes[k] = process(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= idx_pairs.size()) return;
                    outcomes[k] = process(k);
                }
            });
        for (auto& t : pool) t.join();
    }

    bool all_ok = true;
    for (const auto& out : outcomes) {
        if (!out.error.empty()) {
            all_ok = false;
            report::Json ej;
            ej["schema_version"] = report::kSchemaVersion;
            ej["pair"] = out.label;
            ej["error"] = out.error;
            if (wants(cfg, Format::Json))
                report::write_json(out_path(cfg, "fit_" + sanitize(out.label) + ".json"), ej);
            continue;
        }
        all_ok = all_ok && out.converged;
        if (wants(cfg, Format::Json))
            report::write_json(out_path(cfg, "fit_" + sanitize(out.label) + ".json"), out.json);
        if (wants(cfg, Format::Csv))
            report::write_path_csv(out_path(cfg, "path_" + sanitize(out.label) + ".csv"), out.path);
        if (wants(cfg, Format::Text))
            write_text(out_path(cfg, "fit_" + sanitize(out.label) + ".txt"), out.text);
    }
    return all_ok;
}

void run_simulate(const std::filesystem::path& spec_file, const RunConfig& cfg) {
    const auto kv = read_kv_file(spec_file);
    SimSpec spec;
    spec.bekk.nu.reset();
    for (const auto& [key, v] : kv) {
        if (key == "T") spec.T = parse_int(key, v);
        else if (key == "burn_in") spec.burn_in = parse_int(key, v);
        else if (key == "seed") spec.seed = static_cast<std::uint64_t>(parse_int(key, v));
        else if (key == "innovation") {
            if (v == "gaussian") spec.innovation = Distribution::Gaussian;
            else if (v == "student_t") spec.innovation = Distribution::StudentT;
            else throw UsageError("innovation: expected gaussian|student_t");
        } else if (key == "nu") spec.bekk.nu = parse_double(key, v);
        else if (key == "c1") spec.mean.c[0] = parse_double(key, v);
        else if (key == "c2") spec.mean.c[1] = parse_double(key, v);
        else if (key == "r11") spec.mean.phi(0, 0) = parse_double(key, v);
        else if (key == "r21") spec.mean.phi(0, 1) = parse_double(key, v);
        else if (key == "r12") spec.mean.phi(1, 0) = parse_double(key, v);
        else if (key == "r22") spec.mean.phi(1, 1) = parse_double(key, v);
        else if (key == "C11") spec.bekk.C(0, 0) = parse_double(key, v);
        else if (key == "C12") spec.bekk.C(0, 1) = parse_double(key, v);
        else if (key == "C22") spec.bekk.C(1, 1) = parse_double(key, v);
        else if (key == "a11") spec.bekk.A(0, 0) = parse_double(key, v);
        else if (key == "a12") spec.bekk.A(0, 1) = parse_double(key, v);
        else if (key == "a21") spec.bekk.A(1, 0) = parse_double(key, v);
        else if (key == "a22") spec.bekk.A(1, 1) = parse_double(key, v);
        else if (key == "b11") spec.bekk.B(0, 0) = parse_double(key, v);
        else if (key == "b12") spec.bekk.B(0, 1) = parse_double(key, v);
        else if (key == "b21") spec.bekk.B(1, 0) = parse_double(key, v);
        else if (key == "b22") spec.bekk.B(1, 1) = parse_double(key, v);
        else if (key == "origin") {
            const auto d = Date::parse(v);
            if (!d) throw UsageError("origin: expected YYYY-MM-DD");
            spec.origin = *d;
        } else if (key == "name1") spec.names[0] = v;
        else if (key == "name2") spec.names[1] = v;
        else throw UsageError("unknown simulation key '" + key + "'");
    }

    SimResult sim;
    try {
        sim = simulate_bekk(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }

    write_panel_csv(out_path(cfg, "sim_data.csv"), sim.panel);
    report::write_path_csv(out_path(cfg, "sim_true_path.csv"), sim.true_path);

    report::Json truth;
    truth["schema_version"] = report::kSchemaVersion;
    truth["T"] = spec.T;
    truth["burn_in"] = spec.burn_in;
    truth["seed"] = spec.seed;
    truth["innovation"] = to_string(spec.innovation);
    if (spec.bekk.nu) truth["nu"] = *spec.bekk.nu;
    truth["stationarity_radius"] = sim.stationarity_radius;
    truth["stationary"] = sim.stationary;
    truth["mean"] = {{"c1", spec.mean.c[0]}, {"r11", spec.mean.phi(0, 0)},
                     {"r21", spec.mean.phi(0, 1)}, {"c2", spec.mean.c[1]},
                     {"r22", spec.mean.phi(1, 1)}, {"r12", spec.mean.phi(1, 0)}};
    truth["bekk"] = {{"C11", spec.bekk.C(0, 0)}, {"C12", spec.bekk.C(0, 1)},
                     {"C22", spec.bekk.C(1, 1)}, {"a11", spec.bekk.A(0, 0)},
                     {"a12", spec.bekk.A(0, 1)}, {"a21", spec.bekk.A(1, 0)},
                     {"a22", spec.bekk.A(1, 1)}, {"b11", spec.bekk.B(0, 0)},
                     {"b12", spec.bekk.B(0, 1)}, {"b21", spec.bekk.B(1, 0)},
                     {"b22", spec.bekk.B(1, 1)}};
    report::write_json(out_path(cfg, "sim_truth.json"), truth);
}

}  // namespace mgarch::cli
