#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "imb/dataset.hpp"
#include "imb/distributions.hpp"
#include "imb/evt_limits.hpp"

namespace imb {

enum class ExperimentKind { Fig1Sweep, Fig3Grid, CosineStudy, TheoremCampaign };
enum class Classifier { HardSvm, SoftSvm, Logistic };

const char* experiment_kind_name(ExperimentKind k);
const char* classifier_name(Classifier c);

struct CampaignEntry {
    Family family = Family::Laplace;
    TheoremBudget budget;
    bool error = false;
    std::string error_message;
    ValidationReport report;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Fig3Grid;
    std::vector<Family> families{Family::Gaussian};
    std::vector<Classifier> classifiers{Classifier::HardSvm};
    std::vector<int> dims{1};
    std::vector<double> mus{1.0};          // fixed centers (grid mode)
    bool use_mu_schedule = false;          // sweep/cosine mode
    double epsilon = 0.1;                  // schedule budget
    double alpha = 2.0;                    // Frechet shape
    double noise_scale = 0.0;              // 0 keeps the family default
    std::uint64_t n = 100;
    Rational beta{1, 10};
    std::size_t trials = 500;
    std::size_t test_points = 100'000;     // per class, empirical wce
    std::uint64_t seed = 1;
    double soft_c = 1.0;
    double fallback_c = 0.0;               // >0: soft fallback for non-separable hard cells
    long long logistic_steps = 2000;
    double logistic_step = 1.0;
    std::vector<std::uint64_t> n_grid;     // cosine study sizes
    std::size_t sweep_points = 12;         // fig1 grid resolution
    std::vector<CampaignEntry> campaign;   // theorem campaign inputs (budget per entry)
    std::string output_path;
};

struct ResultRow {
    std::string kind;
    std::string family;
    std::string classifier;
    int dim = 1;
    double mu = 0.0;
    std::uint64_t n = 0;
    double beta = 0.0;
    std::string stat;
    double mean = 0.0;
    double std = 0.0;
    std::size_t trials = 0;    // successful trials behind the statistic
    std::size_t failures = 0;  // attempted - successful
};

// Majority-subsampling sweep: for each retained majority size s on a
// log-spaced grid between the minority count and n, draw data, subsample the
// majority to s, fit the hard-margin threshold and record analytic
// worst-class and average error. The s value is emitted in the n column.
std::vector<ResultRow> run_fig1_sweep(const ExperimentConfig& config);

// Classifier x family x dim x mu grid; per cell reports empirical
// worst-class errors of the full-data and subsampled fits plus their paired
// difference delta.
std::vector<ResultRow> run_fig3_grid(const ExperimentConfig& config);

// Alignment of the learned direction with the class-center direction as n
// grows: cos_phi = w.e1/|w| and the offset gap r_b.
std::vector<ResultRow> run_cosine_study(const ExperimentConfig& config);

// Runs validate_theorem for each campaign entry; budget errors are recorded
// on the entry and the campaign continues.
std::vector<CampaignEntry> run_theorem_campaign(const ExperimentConfig& config);

void write_result_csv(const std::vector<ResultRow>& rows, std::ostream& out);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

}  // namespace imb
