// imb: run threshold experiments and theorem validations from the shell.
//
//   imb simulate  --config cfg.json [--seed S] [--out DIR]
//   imb validate  <uniform|gaussian|laplace|frechet> [budget flags]
//   imb reproduce <fig1|fig3|fig4> [override flags]
//   imb inspect   <csv>
//
// Exit codes: 0 success, 1 validation failed, 2 usage error, 3 runtime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "imb/dataset.hpp"
#include "imb/evt_limits.hpp"
#include "imb/experiments.hpp"
#include "imb/stats.hpp"

namespace fs = std::filesystem;

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("IMB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::runtime_error("IMB_SEED is not a valid integer");
        }
    }
    return 1;
}

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string rows_to_csv(const std::vector<imb::ResultRow>& rows) {
    std::ostringstream out;
    imb::write_result_csv(rows, out);
    return out.str();
}

void persist_results(const fs::path& dir, const imb::ExperimentConfig& config,
                     const std::vector<imb::ResultRow>& rows) {
    write_atomic(dir / "results.csv", rows_to_csv(rows));
    write_atomic(dir / "config.json", imb::config_to_json(config) + "\n");
}

int run_config(imb::ExperimentConfig config, const std::string& out_dir) {
    switch (config.kind) {
        case imb::ExperimentKind::Fig1Sweep: {
            const auto rows = imb::run_fig1_sweep(config);
            if (!out_dir.empty()) persist_results(out_dir, config, rows);
            else imb::write_result_csv(rows, std::cout);
            return 0;
        }
        case imb::ExperimentKind::Fig3Grid: {
            const auto rows = imb::run_fig3_grid(config);
            if (!out_dir.empty()) persist_results(out_dir, config, rows);
            else imb::write_result_csv(rows, std::cout);
            return 0;
        }
        case imb::ExperimentKind::CosineStudy: {
            const auto rows = imb::run_cosine_study(config);
            if (!out_dir.empty()) persist_results(out_dir, config, rows);
            else imb::write_result_csv(rows, std::cout);
            return 0;
        }
        case imb::ExperimentKind::TheoremCampaign: {
            const auto entries = imb::run_theorem_campaign(config);
            nlohmann::json j = nlohmann::json::array();
            bool all_passed = true;
            for (const auto& e : entries) {
                if (e.error) {
                    all_passed = false;
                    j.push_back({{"family", imb::family_name(e.family)},
                                 {"error", e.error_message}});
                } else {
                    if (!e.report.passed) all_passed = false;
                    j.push_back(nlohmann::json::parse(imb::report_to_json(e.report)));
                }
            }
            const std::string text = j.dump(2) + "\n";
            if (!out_dir.empty()) {
                write_atomic(fs::path(out_dir) / "reports.json", text);
                write_atomic(fs::path(out_dir) / "config.json", imb::config_to_json(config) + "\n");
            } else {
                std::cout << text;
            }
            return all_passed ? 0 : 1;
        }
    }
    return 3;
}

int cmd_inspect(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty file " + path);
    in.seekg(0);

    nlohmann::json j;
    if (header.rfind("kind,", 0) == 0) {
        // Result table: aggregate per statistic.
        std::string line;
        std::getline(in, line);  // header
        std::map<std::string, std::vector<double>> by_stat;
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::vector<std::string> cells;
            std::string cell;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            if (cells.size() != 12) throw std::runtime_error("malformed result row: " + line);
            by_stat[cells[7]].push_back(std::stod(cells[8]));
            ++rows;
        }
        j["format"] = "results";
        j["rows"] = rows;
        for (const auto& [stat, means] : by_stat) {
            const imb::MeanStd ms = imb::mean_std(means);
            double lo = means.front(), hi = means.front();
            for (double v : means) { lo = std::min(lo, v); hi = std::max(hi, v); }
            j["stats"][stat] = {{"rows", means.size()}, {"mean_of_means", ms.mean},
                                {"min_mean", lo}, {"max_mean", hi}};
        }
    } else {
        const imb::Dataset data = imb::read_csv(in);
        j["format"] = "dataset";
        j["rows"] = data.size();
        j["dim"] = data.dim;
        j["majority"] = data.n_major;
        j["minority"] = data.minority_count();
        j["beta"] = data.beta.value();
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

imb::ExperimentConfig fig1_preset() {
    imb::ExperimentConfig c;
    c.kind = imb::ExperimentKind::Fig1Sweep;
    c.families = {imb::Family::Gaussian};
    c.classifiers = {imb::Classifier::HardSvm};
    c.dims = {1};
    c.use_mu_schedule = true;
    c.n = 1000;
    c.beta = imb::Rational(1, 20);
    c.trials = 500;
    c.sweep_points = 12;
    return c;
}

imb::ExperimentConfig fig3_preset() {
    imb::ExperimentConfig c;
    c.kind = imb::ExperimentKind::Fig3Grid;
    c.classifiers = {imb::Classifier::HardSvm, imb::Classifier::SoftSvm,
                     imb::Classifier::Logistic};
    c.families = {imb::Family::Uniform, imb::Family::Gaussian, imb::Family::Laplace,
                  imb::Family::TwoSidedFrechet};
    c.dims = {1, 10};
    c.mus = {1.0, 3.0};
    c.n = 100;
    c.beta = imb::Rational(1, 10);
    c.trials = 100;
    c.test_points = 100'000;
    c.alpha = 2.0;
    c.soft_c = 1.0;
    // Large-c soft margin stands in for the hard margin on non-separable
    // cells; beyond ~1e3 the solution no longer changes with c, while the
    // pair-update count keeps growing with it.
    c.fallback_c = 1000.0;
    return c;
}

imb::ExperimentConfig fig4_preset() {
    imb::ExperimentConfig c;
    c.kind = imb::ExperimentKind::CosineStudy;
    c.families = {imb::Family::Gaussian};
    c.classifiers = {imb::Classifier::HardSvm};
    c.dims = {10};
    c.use_mu_schedule = true;
    c.noise_scale = 0.6;
    c.beta = imb::Rational(1, 10);
    c.trials = 100;
    c.n_grid = {100, 200, 500, 1000, 2000, 5000, 10000};
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"worst-class error under imbalance: experiments and validators"};
    app.require_subcommand(1);
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    app.add_option("-j,--jobs", jobs, "parallelism knob (results are independent of it)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "run an experiment from a JSON config");
    std::string sim_config_path, sim_out;
    std::uint64_t sim_seed = 0;
    sim->add_option("--config", sim_config_path, "JSON config file")->required()
        ->check(CLI::ExistingFile);
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "override config seed");
    sim->add_option("--out", sim_out, "output directory");

    // validate
    auto* val = app.add_subcommand("validate", "Monte Carlo check of one theorem");
    std::string val_family;
    val->add_option("family", val_family, "uniform|gaussian|laplace|frechet")->required()
        ->check(CLI::IsMember({"uniform", "gaussian", "laplace", "frechet"}));
    double v_eps = 0.1, v_delta = 0.1, v_gamma = 0.1, v_alpha = 2.0, v_ks = 0.05;
    std::string v_beta;
    std::uint64_t v_n = 0, v_seed = 0;
    std::size_t v_trials = 2000;
    val->add_option("--epsilon", v_eps, "separability budget");
    val->add_option("--delta", v_delta, "limit-law slack");
    val->add_option("--gamma", v_gamma, "quantile level");
    val->add_option("--beta", v_beta, "imbalance ratio, e.g. 1/100 or 0.01");
    val->add_option("--n", v_n, "majority sample size");
    val->add_option("--alpha", v_alpha, "tail shape (frechet)");
    val->add_option("--trials", v_trials, "Monte Carlo trials");
    auto* val_seed_opt = val->add_option("--seed", v_seed, "master seed");
    val->add_option("--ks-threshold", v_ks, "pass threshold (uniform)");
    std::string val_out;
    val->add_option("--out", val_out, "output directory");

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "run a figure preset");
    std::string rep_target;
    rep->add_option("target", rep_target, "fig1|fig3|fig4")->required()
        ->check(CLI::IsMember({"fig1", "fig3", "fig4"}));
    std::string r_family, r_beta, r_out;
    std::uint64_t r_n = 0, r_seed = 0;
    std::size_t r_trials = 0, r_test_points = 0;
    double r_fallback_c = -1.0;
    auto* rep_family = rep->add_option("--family", r_family, "override family (fig1)");
    auto* rep_n = rep->add_option("--n", r_n, "override majority size");
    auto* rep_beta = rep->add_option("--beta", r_beta, "override imbalance ratio");
    auto* rep_trials = rep->add_option("--trials", r_trials, "override trial count");
    auto* rep_tp = rep->add_option("--test-points", r_test_points, "override test points per class");
    auto* rep_fc = rep->add_option("--fallback-c", r_fallback_c,
                                   "soft-margin fallback penalty for non-separable hard cells");
    auto* rep_seed_opt = rep->add_option("--seed", r_seed, "master seed");
    rep->add_option("--out", r_out, "output directory");

    // inspect
    auto* ins = app.add_subcommand("inspect", "summarize a CSV artifact");
    std::string ins_path;
    ins->add_option("csv", ins_path, "results or dataset CSV")->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 would exit 0 for --help; anything else is a usage error.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sim) {
            std::ifstream in(sim_config_path);
            std::stringstream buffer;
            buffer << in.rdbuf();
            imb::ExperimentConfig config = imb::config_from_json(buffer.str());
            config.seed = sim_seed_opt->count() ? sim_seed : default_seed();
            const std::string out = sim_out.empty() ? config.output_path : sim_out;
            return run_config(config, out);
        }

        if (*val) {
            const imb::Family family = imb::family_from_name(val_family);
            imb::TheoremBudget budget;
            budget.epsilon = v_eps;
            budget.delta = v_delta;
            budget.gamma = v_gamma;
            budget.alpha = v_alpha;
            // Family-specific defaults follow the validation campaign settings.
            if (family == imb::Family::Uniform) {
                budget.beta = v_beta.empty() ? imb::Rational(1, 10)
                                             : imb::Rational::from_string(v_beta);
                budget.n = v_n ? v_n : 100'000;
            } else {
                budget.beta = v_beta.empty()
                                  ? (family == imb::Family::Gaussian ? imb::Rational(1, 20)
                                                                     : imb::Rational(1, 100))
                                  : imb::Rational::from_string(v_beta);
                budget.n = v_n ? v_n : 1'000'000;
            }
            imb::ValidateOptions opts;
            opts.ks_threshold = v_ks;
            const std::uint64_t seed = val_seed_opt->count() ? v_seed : default_seed();
            const imb::ValidationReport report =
                imb::validate_theorem(family, budget, v_trials, seed, opts);
            const std::string text = imb::report_to_json(report) + "\n";
            if (!val_out.empty()) write_atomic(fs::path(val_out) / "report.json", text);
            std::cout << text;
            return report.passed ? 0 : 1;
        }

        if (*rep) {
            imb::ExperimentConfig config;
            if (rep_target == "fig1") config = fig1_preset();
            else if (rep_target == "fig3") config = fig3_preset();
            else config = fig4_preset();
            if (rep_family->count()) config.families = {imb::family_from_name(r_family)};
            if (rep_n->count()) config.n = r_n;
            if (rep_beta->count()) config.beta = imb::Rational::from_string(r_beta);
            if (rep_trials->count()) config.trials = r_trials;
            if (rep_tp->count()) config.test_points = r_test_points;
            if (rep_fc->count()) config.fallback_c = r_fallback_c;
            config.seed = rep_seed_opt->count() ? r_seed : default_seed();
            return run_config(config, r_out);
        }

        if (*ins) return cmd_inspect(ins_path);
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = e.what();
        err["argv0"] = argv[0];
        std::cerr << err.dump(2) << "\n";
        return 3;
    }
    return 2;
}
