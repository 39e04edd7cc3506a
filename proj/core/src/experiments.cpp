#include "imb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "imb/datagen.hpp"
#include "imb/stats.hpp"
#include "imb/svm.hpp"

namespace imb {
namespace {

std::vector<std::uint64_t> log_spaced(std::uint64_t lo, std::uint64_t hi, std::size_t count) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("log_spaced: bad range");
    std::vector<std::uint64_t> out;
    if (count < 2 || lo == hi) { out.push_back(lo); if (hi != lo) out.push_back(hi); return out; }
    const double llo = std::log(static_cast<double>(lo));
    const double lhi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        const auto v = static_cast<std::uint64_t>(std::llround(std::exp(llo + f * (lhi - llo))));
        if (out.empty() || v > out.back()) out.push_back(std::clamp(v, lo, hi));
    }
    return out;
}

GenRecipe config_recipe(const ExperimentConfig& config, Family family, double mu, int dim) {
    GenRecipe recipe = make_recipe(family, mu, dim, config.alpha);
    recipe.epsilon = config.epsilon;
    if (config.noise_scale > 0.0) recipe.scale = config.noise_scale;
    return recipe;
}

struct Extremes1D {
    double pos_min = std::numeric_limits<double>::infinity();
    double neg_max = -std::numeric_limits<double>::infinity();
};

Extremes1D scan_1d(const Dataset& data) {
    Extremes1D e;
    for (std::size_t k = 0; k < data.size(); ++k) {
        const double x = data.point(k)[0];
        if (data.label(k) > 0) e.pos_min = std::min(e.pos_min, x);
        else e.neg_max = std::max(e.neg_max, x);
    }
    return e;
}

ResultRow make_row(const ExperimentConfig& config, const std::string& family,
                   const std::string& classifier, int dim, double mu, std::uint64_t n,
                   const std::string& stat, const std::vector<double>& values,
                   std::size_t attempted) {
    ResultRow row;
    row.kind = experiment_kind_name(config.kind);
    row.family = family;
    row.classifier = classifier;
    row.dim = dim;
    row.mu = mu;
    row.n = n;
    row.beta = config.beta.value();
    row.stat = stat;
    const MeanStd ms = mean_std(values);
    row.mean = values.empty() ? std::numeric_limits<double>::quiet_NaN() : ms.mean;
    row.std = values.empty() ? std::numeric_limits<double>::quiet_NaN() : ms.std;
    row.trials = values.size();
    row.failures = attempted - values.size();
    return row;
}

std::optional<LinearModel> fit_one(Classifier c, const Dataset& data,
                                   const ExperimentConfig& config) {
    switch (c) {
        case Classifier::HardSvm:
            if (data.dim == 1) {
                const Extremes1D e = scan_1d(data);
                if (!(e.neg_max < e.pos_min)) break;
                return solve_svm_1d(e.neg_max, e.pos_min);
            }
            try {
                // Short budget: separable cells converge well inside it, and
                // heavy-tailed ones that stall are handed to the soft fit
                // below rather than ground out.
                SvmOptions opts;
                opts.max_iter = 2'000'000;
                return train_hard_svm(data, opts);
            } catch (const NotSeparable&) {
                break;
            } catch (const IterationLimit&) {
                break;
            }
        case Classifier::SoftSvm:
            return train_soft_svm(data, config.soft_c);
        case Classifier::Logistic:
            return train_logistic(data, config.logistic_steps, config.logistic_step);
    }
    // Non-separable hard cell: optional soft fallback, otherwise a failure.
    if (config.fallback_c > 0.0) return train_soft_svm(data, config.fallback_c);
    return std::nullopt;
}

// Worst-class errors of both models on one shared test draw, so the paired
// difference is not inflated by independent test noise.
std::pair<double, double> paired_wce(const GenRecipe& recipe, const LinearModel& erm,
                                     const LinearModel& sub, std::size_t test_points,
                                     RngStream& rng) {
    const int d = recipe.dim;
    const DistributionSpec noise = recipe.noise();
    std::vector<double> x(d);
    std::size_t miss[2][2] = {{0, 0}, {0, 0}};  // [model][class]
    for (int cls = 0; cls < 2; ++cls) {
        const double center = cls == 0 ? recipe.mu_n : -recipe.mu_n;
        const double sign = cls == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < test_points; ++i) {
            x[0] = center + sample_one(noise, rng);
            for (int q = 1; q < d; ++q) x[q] = sample_one(noise, rng);
            if (sign * erm.decision(x) < 0.0) ++miss[0][cls];
            if (sign * sub.decision(x) < 0.0) ++miss[1][cls];
        }
    }
    const double m = static_cast<double>(test_points);
    return {std::max(miss[0][0] / m, miss[0][1] / m), std::max(miss[1][0] / m, miss[1][1] / m)};
}

nlohmann::json budget_to_json(const TheoremBudget& b) {
    return {
        {"epsilon", b.epsilon}, {"delta", b.delta}, {"gamma", b.gamma},
        {"beta_num", b.beta.num}, {"beta_den", b.beta.den}, {"n", b.n}, {"alpha", b.alpha},
    };
}

TheoremBudget budget_from_json(const nlohmann::json& j) {
    TheoremBudget b;
    b.epsilon = j.at("epsilon").get<double>();
    b.delta = j.at("delta").get<double>();
    b.gamma = j.at("gamma").get<double>();
    b.beta = Rational(j.at("beta_num").get<long long>(), j.at("beta_den").get<long long>());
    b.n = j.at("n").get<std::uint64_t>();
    b.alpha = j.at("alpha").get<double>();
    return b;
}

}  // namespace

const char* experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Fig1Sweep: return "fig1_sweep";
        case ExperimentKind::Fig3Grid: return "fig3_grid";
        case ExperimentKind::CosineStudy: return "cosine_study";
        case ExperimentKind::TheoremCampaign: return "theorem_campaign";
    }
    return "?";
}

const char* classifier_name(Classifier c) {
    switch (c) {
        case Classifier::HardSvm: return "hard-svm";
        case Classifier::SoftSvm: return "soft-svm";
        case Classifier::Logistic: return "logistic";
    }
    return "?";
}

std::vector<ResultRow> run_fig1_sweep(const ExperimentConfig& config) {
    if (config.families.size() != 1) {
        throw std::invalid_argument("run_fig1_sweep: exactly one family");
    }
    const Family family = config.families[0];
    const double mu = config.use_mu_schedule
                          ? mu_schedule(family, config.n, config.epsilon, config.alpha)
                          : config.mus.at(0);
    const GenRecipe recipe = config_recipe(config, family, mu, 1);
    const std::size_t minority = config.beta.times_integral(config.n);
    const std::vector<std::uint64_t> sizes = log_spaced(minority, config.n, config.sweep_points);

    std::vector<ResultRow> rows;
    const double beta_value = config.beta.value();
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::uint64_t s = sizes[si];
        std::vector<double> wce_vals, avg_vals;
        wce_vals.reserve(config.trials);
        avg_vals.reserve(config.trials);
        for (std::size_t t = 0; t < config.trials; ++t) {
            RngStream rng = RngStream::child(config.seed, si * config.trials + t);
            const Dataset data = generate(recipe, config.n, config.beta, rng);
            const Dataset kept = subsample_majority_to(data, s, rng);
            const Extremes1D e = scan_1d(kept);
            if (!(e.neg_max < e.pos_min)) continue;
            const LinearModel model = solve_svm_1d(e.neg_max, e.pos_min);
            wce_vals.push_back(wce_analytic(recipe, model));
            avg_vals.push_back(avg_error_analytic(recipe, model, beta_value));
        }
        const std::string fam = family_name(family);
        rows.push_back(make_row(config, fam, "hard-svm", 1, mu, s, "wce_sub", wce_vals,
                                config.trials));
        rows.push_back(make_row(config, fam, "hard-svm", 1, mu, s, "avg_err", avg_vals,
                                config.trials));
    }
    return rows;
}

std::vector<ResultRow> run_fig3_grid(const ExperimentConfig& config) {
    std::vector<ResultRow> rows;
    std::size_t cell = 0;
    for (Classifier cls : config.classifiers) {
        for (Family family : config.families) {
            for (int dim : config.dims) {
                for (double mu : config.mus) {
                    const GenRecipe recipe = config_recipe(config, family, mu, dim);
                    std::vector<double> v_erm, v_sub, v_delta;
                    v_erm.reserve(config.trials);
                    for (std::size_t t = 0; t < config.trials; ++t) {
                        RngStream rng = RngStream::child(config.seed, cell * config.trials + t);
                        const Dataset data = generate(recipe, config.n, config.beta, rng);
                        const Dataset small = subsample_majority(data, rng);
                        std::optional<LinearModel> m_erm, m_sub;
                        try {
                            m_erm = fit_one(cls, data, config);
                            if (m_erm) m_sub = fit_one(cls, small, config);
                        } catch (const std::runtime_error&) {
                            m_erm.reset();
                        }
                        if (!m_erm || !m_sub) continue;
                        const auto [we, ws] =
                            paired_wce(recipe, *m_erm, *m_sub, config.test_points, rng);
                        v_erm.push_back(we);
                        v_sub.push_back(ws);
                        v_delta.push_back(we - ws);
                    }
                    const std::string fam = family_name(family);
                    const std::string cname = classifier_name(cls);
                    rows.push_back(make_row(config, fam, cname, dim, mu, config.n, "wce_erm",
                                            v_erm, config.trials));
                    rows.push_back(make_row(config, fam, cname, dim, mu, config.n, "wce_sub",
                                            v_sub, config.trials));
                    rows.push_back(make_row(config, fam, cname, dim, mu, config.n, "delta",
                                            v_delta, config.trials));
                    ++cell;
                }
            }
        }
    }
    return rows;
}

std::vector<ResultRow> run_cosine_study(const ExperimentConfig& config) {
    if (config.n_grid.empty()) throw std::invalid_argument("run_cosine_study: empty n grid");
    const Family family = config.families.at(0);
    const int dim = config.dims.at(0);
    if (dim < 2) throw std::invalid_argument("run_cosine_study: needs dim > 1");

    std::vector<ResultRow> rows;
    std::vector<double> e1(dim, 0.0);
    e1[0] = 1.0;
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const std::uint64_t n = config.n_grid[ni];
        const double mu = config.use_mu_schedule
                              ? mu_schedule(family, n, config.epsilon, config.alpha)
                              : config.mus.at(0);
        const GenRecipe recipe = config_recipe(config, family, mu, dim);
        std::vector<double> cos_vals, rb_vals;
        for (std::size_t t = 0; t < config.trials; ++t) {
            RngStream rng = RngStream::child(config.seed, ni * config.trials + t);
            const Dataset data = generate(recipe, n, config.beta, rng);
            try {
                const LinearModel model = train_hard_svm(data);
                double norm2 = 0.0;
                for (double w : model.w) norm2 += w * w;
                cos_vals.push_back(model.w[0] / std::sqrt(norm2));
                const double b_w = offset_for_direction(data, model.w) /
                                   std::sqrt(norm2);  // normalized direction's offset
                const double b_mu = offset_for_direction(data, e1);
                rb_vals.push_back(std::fabs(b_w - b_mu));
            } catch (const NotSeparable&) {
                continue;
            }
        }
        const std::string fam = family_name(family);
        rows.push_back(make_row(config, fam, "hard-svm", dim, mu, n, "cos_phi", cos_vals,
                                config.trials));
        rows.push_back(make_row(config, fam, "hard-svm", dim, mu, n, "r_b", rb_vals,
                                config.trials));
    }
    return rows;
}

std::vector<CampaignEntry> run_theorem_campaign(const ExperimentConfig& config) {
    std::vector<CampaignEntry> out = config.campaign;
    for (std::size_t i = 0; i < out.size(); ++i) {
        try {
            std::uint64_t sm = config.seed + i;
            out[i].report = validate_theorem(out[i].family, out[i].budget, config.trials,
                                             splitmix64(sm));
            out[i].error = false;
            out[i].error_message.clear();
        } catch (const std::invalid_argument& e) {
            out[i].error = true;
            out[i].error_message = e.what();
        }
    }
    return out;
}

void write_result_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "kind,family,classifier,dim,mu,n,beta,stat,mean,std,trials,failures\n";
    char buf[40];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const ResultRow& r : rows) {
        out << r.kind << ',' << r.family << ',' << r.classifier << ',' << r.dim << ','
            << num(r.mu) << ',' << r.n << ',' << num(r.beta) << ',' << r.stat << ','
            << num(r.mean) << ',' << num(r.std) << ',' << r.trials << ',' << r.failures << '\n';
    }
}

std::string config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["kind"] = experiment_kind_name(c.kind);
    nlohmann::json fams = nlohmann::json::array();
    for (Family f : c.families) fams.push_back(family_name(f));
    j["families"] = fams;
    nlohmann::json cls = nlohmann::json::array();
    for (Classifier k : c.classifiers) cls.push_back(classifier_name(k));
    j["classifiers"] = cls;
    j["dims"] = c.dims;
    j["mus"] = c.mus;
    j["use_mu_schedule"] = c.use_mu_schedule;
    j["epsilon"] = c.epsilon;
    j["alpha"] = c.alpha;
    j["noise_scale"] = c.noise_scale;
    j["n"] = c.n;
    j["beta_num"] = c.beta.num;
    j["beta_den"] = c.beta.den;
    j["trials"] = c.trials;
    j["test_points"] = c.test_points;
    j["seed"] = c.seed;
    j["soft_c"] = c.soft_c;
    j["fallback_c"] = c.fallback_c;
    j["logistic_steps"] = c.logistic_steps;
    j["logistic_step"] = c.logistic_step;
    j["n_grid"] = c.n_grid;
    j["sweep_points"] = c.sweep_points;
    nlohmann::json camp = nlohmann::json::array();
    for (const CampaignEntry& e : c.campaign) {
        camp.push_back({{"family", family_name(e.family)}, {"budget", budget_to_json(e.budget)}});
    }
    j["campaign"] = camp;
    j["output_path"] = c.output_path;
    return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "fig1_sweep") c.kind = ExperimentKind::Fig1Sweep;
    else if (kind == "fig3_grid") c.kind = ExperimentKind::Fig3Grid;
    else if (kind == "cosine_study") c.kind = ExperimentKind::CosineStudy;
    else if (kind == "theorem_campaign") c.kind = ExperimentKind::TheoremCampaign;
    else throw std::invalid_argument("config_from_json: unknown kind '" + kind + "'");

    c.families.clear();
    for (const auto& f : j.at("families")) c.families.push_back(family_from_name(f));
    c.classifiers.clear();
    for (const auto& s : j.at("classifiers")) {
        const std::string name = s.get<std::string>();
        if (name == "hard-svm") c.classifiers.push_back(Classifier::HardSvm);
        else if (name == "soft-svm") c.classifiers.push_back(Classifier::SoftSvm);
        else if (name == "logistic") c.classifiers.push_back(Classifier::Logistic);
        else throw std::invalid_argument("config_from_json: unknown classifier '" + name + "'");
    }
    c.dims = j.at("dims").get<std::vector<int>>();
    c.mus = j.at("mus").get<std::vector<double>>();
    c.use_mu_schedule = j.value("use_mu_schedule", false);
    c.epsilon = j.value("epsilon", 0.1);
    c.alpha = j.value("alpha", 2.0);
    c.noise_scale = j.value("noise_scale", 0.0);
    c.n = j.at("n").get<std::uint64_t>();
    c.beta = Rational(j.at("beta_num").get<long long>(), j.at("beta_den").get<long long>());
    c.trials = j.at("trials").get<std::size_t>();
    c.test_points = j.value("test_points", std::size_t{100'000});
    c.seed = j.value("seed", std::uint64_t{1});
    c.soft_c = j.value("soft_c", 1.0);
    c.fallback_c = j.value("fallback_c", 0.0);
    c.logistic_steps = j.value("logistic_steps", 2000LL);
    c.logistic_step = j.value("logistic_step", 1.0);
    c.n_grid = j.value("n_grid", std::vector<std::uint64_t>{});
    c.sweep_points = j.value("sweep_points", std::size_t{12});
    for (const auto& e : j.value("campaign", nlohmann::json::array())) {
        CampaignEntry entry;
        entry.family = family_from_name(e.at("family").get<std::string>());
        entry.budget = budget_from_json(e.at("budget"));
        c.campaign.push_back(entry);
    }
    c.output_path = j.value("output_path", std::string{});
    return c;
}

}  // namespace imb
