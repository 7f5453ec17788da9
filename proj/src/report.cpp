#include "mgarch/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace mgarch::report {

Json to_json(const MomentSummary& m) {
    Json j;
    j["mean"] = m.mean;
    j["variance"] = m.variance;
    if (m.higher_moments_defined) {
        j["skewness"] = m.skewness;
        j["excess_kurtosis"] = m.excess_kurtosis;
        j["raw_kurtosis"] = m.excess_kurtosis + 3.0;
    } else {
        j["skewness"] = nullptr;
        j["excess_kurtosis"] = nullptr;
        j["raw_kurtosis"] = nullptr;
    }
    j["T"] = m.T;
    j["higher_moments_defined"] = m.higher_moments_defined;
    return j;
}

Json to_json(const CorrelationMatrix& c) {
    Json j;
    j["labels"] = c.labels;
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < c.values.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < c.values.cols(); ++k) row.push_back(c.values(i, k));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

Json to_json(const TestResult& t) {
    Json j;
    j["statistic"] = t.statistic;
    j["order"] = t.order;
    j["p_value"] = t.p_value;
    return j;
}

Json to_json(const CorrelationSummary& s) {
    Json j;
    j["min"] = s.min;
    j["q1"] = s.q1;
    j["median"] = s.median;
    j["q3"] = s.q3;
    j["max"] = s.max;
    j["mean"] = s.mean;
    j["std"] = s.std;
    j["skewness"] = s.skewness;
    j["excess_kurtosis"] = s.excess_kurtosis;
    j["ks"] = to_json(s.ks);
    j["ks_variant"] = s.ks.name;
    return j;
}

namespace {

Json entry(double estimate, double t, const char* t_key) {
    Json e;
    e["estimate"] = estimate;
    e[t_key] = t;
    return e;
}

}  // namespace

Json to_json(const EstimationResult& r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["distribution"] = to_string(r.distribution);
    j["mean_mode"] = to_string(r.mean_mode);
    j["loglik"] = r.loglik;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["attempts"] = r.attempts;
    j["stationarity_radius"] = r.stationarity_radius;
    j["hessian_cond"] = r.hessian_cond;
    j["hessian_pd"] = r.hessian_pd;
    j["floor_activations"] = r.floor_activations;
    j["max_abs_gradient"] = r.max_abs_gradient;
    j["short_sample"] = r.short_sample;

    Json panel_a;
    if (r.mean_mode == MeanMode::Joint) {
        // mean block leads the estimate vector; robust t-stats apply
        const char* keys[] = {"C11", "r11", "r21", "C22", "r22", "r12"};
        for (int i = 0; i < 6; ++i) panel_a[keys[i]] = entry(r.estimates[i], r.robust_t[i], "robust_t");
    } else {
        const auto ols_t = [&](int eq, int col) {
            const double se = r.mean_ols_se(eq, col);
            const double coef = col == 0 ? r.mean.c[eq] : r.mean.phi(eq, col - 1);
            return se > 0.0 ? coef / se : 0.0;
        };
        panel_a["C11"] = entry(r.mean.c[0], ols_t(0, 0), "ols_t");
        panel_a["r11"] = entry(r.mean.phi(0, 0), ols_t(0, 1), "ols_t");
        panel_a["r21"] = entry(r.mean.phi(0, 1), ols_t(0, 2), "ols_t");
        panel_a["C22"] = entry(r.mean.c[1], ols_t(1, 0), "ols_t");
        panel_a["r22"] = entry(r.mean.phi(1, 1), ols_t(1, 2), "ols_t");
        panel_a["r12"] = entry(r.mean.phi(1, 0), ols_t(1, 1), "ols_t");
    }
    j["panel_a"] = std::move(panel_a);

    Json panel_b;
    const int off = r.mean_mode == MeanMode::Joint ? 6 : 0;
    const char* keys[] = {"C11", "C12", "C22", "a11", "a12", "a21", "a22",
                          "b11", "b12", "b21", "b22"};
    for (int i = 0; i < 11; ++i)
        panel_b[keys[i]] = entry(r.estimates[off + i], r.robust_t[off + i], "robust_t");
    if (r.distribution == Distribution::StudentT)
        panel_b["nu"] = entry(r.estimates[off + 11], r.robust_t[off + 11], "robust_t");
    j["panel_b"] = std::move(panel_b);

    j["cct"] = {{"11", r.bekk.cct()(0, 0)}, {"12", r.bekk.cct()(0, 1)}, {"22", r.bekk.cct()(1, 1)}};
    return j;
}

void write_acf_csv(const std::filesystem::path& path, const AcfResult& acf) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.precision(17);
    out << "# band," << acf.band << "\nlag,coefficient\n";
    for (Eigen::Index k = 0; k < acf.coefficients.size(); ++k)
        out << (k + 1) << ',' << acf.coefficients[k] << '\n';
}

void write_path_csv(const std::filesystem::path& path, const ConditionalPath& cp) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out.precision(17);
    out << "date,h11,h12,h22,rho\n";
    for (Eigen::Index t = 0; t < cp.size(); ++t)
        out << cp.dates[static_cast<std::size_t>(t)].str() << ',' << cp.h11[t] << ',' << cp.h12[t]
            << ',' << cp.h22[t] << ',' << cp.rho[t] << '\n';
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << j.dump(2) << '\n';
}

std::string render_estimation_text(const EstimationResult& r, const std::string& pair_label) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "=== " << pair_label << " ===\n";
    os << "log-likelihood " << r.loglik << (r.converged ? "" : "  [NOT CONVERGED]") << '\n';
    const Json j = to_json(r);
    os << "Panel A: Conditional Mean\n";
    for (const auto& [key, val] : j["panel_a"].items()) {
        const char* tkey = val.contains("robust_t") ? "robust_t" : "ols_t";
        os << "  " << std::setw(4) << std::left << key << ' ' << std::right << std::setw(8)
           << val["estimate"].get<double>() << "  (" << val[tkey].get<double>() << ")\n";
    }
    os << "Panel B: Conditional Variance\n";
    for (const auto& [key, val] : j["panel_b"].items())
        os << "  " << std::setw(4) << std::left << key << ' ' << std::right << std::setw(8)
           << val["estimate"].get<double>() << "  (" << val["robust_t"].get<double>() << ")\n";
    return os.str();
}

std::string render_tests_text(const std::string& label, const std::vector<TestResult>& tests) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "--- " << label << " ---\n";
    for (const auto& t : tests)
        os << "  " << std::setw(14) << std::left << t.name << ' ' << std::right << std::setw(10)
           << t.statistic << "  (" << t.p_value << ")\n";
    return os.str();
}

}  // namespace mgarch::report
