// Batch front end: describe | diagnose | fit | simulate.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 convergence failure.

#include "mgarch/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using mgarch::cli::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_file) {
    cmd->add_option("--config", config_file, "key = value config file");
    cmd->add_option("-i,--input", cfg.input, "input CSV (date column first)");
    cmd->add_option("-o,--output-dir", cfg.output_dir,
                    "report directory (default $MGARCH_OUTPUT_DIR or .)");
    cmd->add_option("--columns", [&cfg](const std::vector<std::string>& vals) {
        cfg.columns = vals;
        return true;
    }, "value columns to use (default: all)")->expected(-1);
    cmd->add_option("--method", [&cfg](const std::vector<std::string>& v) {
        if (v[0] == "log") cfg.method = mgarch::ReturnMethod::Log;
        else if (v[0] == "simple") cfg.method = mgarch::ReturnMethod::Simple;
        else return false;
        return true;
    }, "price-to-return conversion: log|simple");
    cmd->add_option("--scale", [&cfg](const std::vector<std::string>& v) {
        if (v[0] == "percent") cfg.scale = mgarch::Unit::Percent;
        else if (v[0] == "decimal") cfg.scale = mgarch::Unit::Decimal;
        else return false;
        return true;
    }, "return units: percent|decimal");
    cmd->add_option("--align", [&cfg](const std::vector<std::string>& v) {
        if (v[0] == "intersect") cfg.align_policy = mgarch::AlignPolicy::Intersect;
        else if (v[0] == "strict") cfg.align_policy = mgarch::AlignPolicy::Strict;
        else return false;
        return true;
    }, "date alignment: intersect|strict");
    cmd->add_option("--kind", [&cfg](const std::vector<std::string>& v) {
        if (v[0] == "price") cfg.ingest.default_kind = mgarch::ColumnKind::Price;
        else if (v[0] == "return") cfg.ingest.default_kind = mgarch::ColumnKind::Return;
        else return false;
        return true;
    }, "column kind: price|return");
    cmd->add_flag("--skip-bad-rows", cfg.ingest.skip_bad_rows,
                  "drop unparseable rows (counted) instead of failing");
    cmd->add_option("--formats", [&cfg](const std::vector<std::string>& vals) {
        cfg.formats.clear();
        for (const auto& f : vals) {
            if (f == "json") cfg.formats.insert(mgarch::cli::Format::Json);
            else if (f == "csv") cfg.formats.insert(mgarch::cli::Format::Csv);
            else if (f == "text") cfg.formats.insert(mgarch::cli::Format::Text);
            else return false;
        }
        return true;
    }, "report formats: json csv text")->expected(-1);
}

void apply_config_file(RunConfig& cfg, const std::string& config_file) {
    if (config_file.empty()) return;
    // CLI flags override the file: apply the file onto defaults first,
    // which CLI11 has already overwritten where flags were given — so
    // instead parse the file into a fresh config and merge explicitly.
    mgarch::cli::apply_kv(cfg, mgarch::cli::read_kv_file(config_file));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bivariate VAR(1)-BEKK(1,1) GARCH estimation and diagnostics"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_file;

    auto* describe = app.add_subcommand("describe", "moments, correlations, ACF tables");
    add_common_flags(describe, cfg, config_file);

    auto* diagnose = app.add_subcommand("diagnose", "pre- and post-fit test battery");
    add_common_flags(diagnose, cfg, config_file);
    diagnose->add_option("--model", cfg.model_file, "fit report JSON for the post-fit block");
    diagnose->add_option("--lags", cfg.portmanteau_lags, "Ljung-Box / ARCH lag count");
    diagnose->add_option("--adf-lags", cfg.adf_lags, "ADF augmentation lags");
    diagnose->add_flag("--lilliefors", cfg.lilliefors, "Lilliefors-corrected KS p-values");

    auto* fit = app.add_subcommand("fit", "VAR-BEKK estimation per configured pair");
    add_common_flags(fit, cfg, config_file);
    std::vector<std::string> pair_args;
    fit->add_option("--pair", pair_args, "column pair as a:b (repeatable)")->expected(-1);
    fit->add_flag("--ma-filter", cfg.ma_filter, "apply the MA(1) pre-filter per series");
    bool student_t = false;
    fit->add_flag("--student-t", student_t, "Student-t likelihood instead of Gaussian");
    bool two_step = false;
    fit->add_flag("--two-step", two_step, "OLS mean first, then the variance parameters");
    fit->add_option("--restarts", cfg.optimizer.restarts, "jittered optimizer restarts");
    fit->add_option("--seed", cfg.optimizer.seed, "restart jitter seed");
    fit->add_option("--max-iterations", cfg.optimizer.max_iterations, "optimizer iteration cap");
    fit->add_option("--workers", cfg.workers, "parallel workers across pairs");
    fit->add_flag("--lilliefors", cfg.lilliefors, "Lilliefors-corrected KS p-values");

    auto* simulate = app.add_subcommand("simulate", "draw a synthetic dataset from a DGP spec");
    std::string spec_file;
    simulate->add_option("spec", spec_file, "key = value DGP spec file")->required();
    simulate->add_option("-o,--output-dir", cfg.output_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        apply_config_file(cfg, config_file);
        for (const auto& p : pair_args) {
            const auto colon = p.find(':');
            if (colon == std::string::npos)
                throw mgarch::cli::UsageError("--pair expects a:b, got '" + p + "'");
            cfg.pairs.emplace_back(p.substr(0, colon), p.substr(colon + 1));
        }
        if (student_t) cfg.distribution = mgarch::Distribution::StudentT;
        if (two_step) cfg.mean_mode = mgarch::MeanMode::TwoStep;

        if (describe->parsed()) {
            mgarch::cli::run_describe(cfg);
        } else if (diagnose->parsed()) {
            mgarch::cli::run_diagnose(cfg);
        } else if (fit->parsed()) {
            if (!mgarch::cli::run_fit(cfg)) {
                std::cerr << "fit: one or more pairs failed to converge\n";
                return 3;
            }
        } else if (simulate->parsed()) {
            mgarch::cli::run_simulate(spec_file, cfg);
        }
    } catch (const mgarch::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const mgarch::cli::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
