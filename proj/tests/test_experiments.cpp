#include <sstream>

#include "doctest.h"
#include "imb/experiments.hpp"

using namespace imb;

namespace {

ExperimentConfig tiny_grid() {
    ExperimentConfig c;
    c.kind = ExperimentKind::Fig3Grid;
    c.families = {Family::Gaussian};
    c.classifiers = {Classifier::HardSvm};
    c.dims = {1};
    c.mus = {3.0};
    c.n = 20;
    c.beta = Rational(1, 5);
    c.trials = 3;
    c.test_points = 500;
    c.seed = 42;
    return c;
}

}  // namespace

TEST_CASE("config JSON round-trip") {
    ExperimentConfig c = tiny_grid();
    c.families = {Family::Laplace, Family::TwoSidedFrechet};
    c.classifiers = {Classifier::SoftSvm, Classifier::Logistic};
    c.use_mu_schedule = true;
    c.noise_scale = 0.6;
    c.fallback_c = 1000.0;
    c.n_grid = {10, 20};

    const ExperimentConfig back = config_from_json(config_to_json(c));
    CHECK(back.kind == c.kind);
    CHECK(back.families == c.families);
    CHECK(back.classifiers == c.classifiers);
    CHECK(back.use_mu_schedule == c.use_mu_schedule);
    CHECK(back.noise_scale == c.noise_scale);
    CHECK(back.beta.num == c.beta.num);
    CHECK(back.beta.den == c.beta.den);
    CHECK(back.fallback_c == c.fallback_c);
    CHECK(back.n_grid == c.n_grid);
    CHECK(back.seed == c.seed);
}

TEST_CASE("result CSV has the fixed header and one line per row") {
    std::vector<ResultRow> rows(2);
    rows[0].kind = "fig3";
    rows[0].stat = "wce_erm";
    rows[0].mean = 0.125;
    std::stringstream ss;
    write_result_csv(rows, ss);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "kind,family,classifier,dim,mu,n,beta,stat,mean,std,trials,failures");
    int count = 0;
    while (std::getline(ss, line)) ++count;
    CHECK(count == 2);
}

TEST_CASE("fig3 grid emits three stats per cell and is seed-deterministic") {
    const ExperimentConfig c = tiny_grid();
    const auto rows = run_fig3_grid(c);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].stat == "wce_erm");
    CHECK(rows[1].stat == "wce_sub");
    CHECK(rows[2].stat == "delta");
    for (const auto& r : rows) {
        CHECK(r.trials + r.failures == 3);
        CHECK(r.family == "gaussian");
        CHECK(r.classifier == "hard-svm");
    }
    // paired difference is consistent with the two means over the same trials
    CHECK(rows[2].mean == doctest::Approx(rows[0].mean - rows[1].mean).epsilon(1e-12));

    const auto again = run_fig3_grid(c);
    CHECK(again[0].mean == rows[0].mean);
    ExperimentConfig other = c;
    other.seed = 43;
    CHECK(run_fig3_grid(other)[0].mean != rows[0].mean);
}

TEST_CASE("fig1 sweep covers minority..n and reports both stats") {
    ExperimentConfig c;
    c.kind = ExperimentKind::Fig1Sweep;
    c.families = {Family::Gaussian};
    c.mus = {3.0};
    c.n = 40;
    c.beta = Rational(1, 4);
    c.trials = 5;
    c.sweep_points = 4;
    c.seed = 9;
    const auto rows = run_fig1_sweep(c);
    REQUIRE(rows.size() == 8);  // 4 sizes x {wce_sub, avg_err}
    CHECK(rows.front().n == 10);
    CHECK(rows[rows.size() - 2].n == 40);
    for (std::size_t i = 0; i + 2 < rows.size(); i += 2) CHECK(rows[i].n < rows[i + 2].n);
}

TEST_CASE("cosine study reports cos_phi and r_b per grid point") {
    ExperimentConfig c;
    c.kind = ExperimentKind::CosineStudy;
    c.families = {Family::Gaussian};
    c.dims = {4};
    c.mus = {4.0};
    c.n_grid = {50, 100};
    c.beta = Rational(1, 10);
    c.trials = 3;
    c.seed = 6;
    const auto rows = run_cosine_study(c);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].stat == "cos_phi");
    CHECK(rows[1].stat == "r_b");
    CHECK(rows[0].mean > 0.0);
    CHECK(rows[0].mean <= 1.0);

    ExperimentConfig bad = c;
    bad.dims = {1};
    CHECK_THROWS(run_cosine_study(bad));
}

TEST_CASE("theorem campaign records budget errors without aborting") {
    ExperimentConfig c;
    c.kind = ExperimentKind::TheoremCampaign;
    c.trials = 100;
    c.seed = 2;
    CampaignEntry good;
    good.family = Family::Laplace;
    good.budget.beta = Rational(1, 10);
    good.budget.n = 1000;
    CampaignEntry bad;
    bad.family = Family::Laplace;
    bad.budget.beta = Rational(1, 10);
    bad.budget.n = 1001;  // beta * n not integral
    c.campaign = {bad, good};

    const auto done = run_theorem_campaign(c);
    REQUIRE(done.size() == 2);
    CHECK(done[0].error);
    CHECK_FALSE(done[0].error_message.empty());
    CHECK_FALSE(done[1].error);
    CHECK(done[1].report.trials == 100);
}
