#pragma once

#include "practrel/comparators.hpp"
#include "practrel/decision.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace practrel {

enum class ModelFamily { binomial, normal };

const char* to_string(ModelFamily f) noexcept;

// One procedure run on every simulated dataset.
struct ProcedureConfig {
    // nhst | tost | rope | bayes_factor | hypothesis_ratio | expected_loss
    std::string procedure;
    // Column name in the rate table; defaults to `procedure`.
    std::string label{};
    double alpha = 0.05;
    double mass = 0.95;
    double bf_threshold = 3.0;
    double ratio_lo = 1.0;
    double ratio_hi = 1.0;
    bool restricted_space = false;
    // TOST bounds; default is the hull of the negligible region.
    std::optional<std::pair<double, double>> bounds{};

    const std::string& name() const noexcept { return label.empty() ? procedure : label; }
};

bool is_known_procedure(const std::string& name) noexcept;

// Verdict labels a procedure can produce, "error" last.
std::vector<std::string> verdict_labels(const std::string& procedure);

// What the procedures need besides the data.
struct ProcedureContext {
    const LossSpec* loss = nullptr;  // required by expected_loss
    std::optional<HypothesisPair> pair{};  // hypothesis_ratio, bayes_factor
    std::optional<Interval> negligible_hull{};  // rope, default tost bounds
};

// Runs one procedure. Decision rules report their decision as the verdict,
// the posterior odds (or E[L(a1)] - E[L(a0)]) as the statistic.
ComparatorResult evaluate_procedure(const ProcedureConfig& proc, const SamplingModel& model,
                                    const ProcedureContext& ctx);

struct Scenario {
    std::string name;
    LossSpec loss;
    ModelFamily family = ModelFamily::binomial;
    double sigma = 1.0;        // normal only
    double prior_alpha = 1.0;  // binomial only
    double prior_beta = 1.0;
    double prior_mean = 0.0;  // normal only
    double prior_sd = 1.0;
    std::vector<double> true_effects{};
    std::vector<std::uint64_t> sample_sizes{};
    std::uint64_t replicates = 1;
    std::uint64_t seed = 0;
    std::vector<ProcedureConfig> procedures{};
    PartitionOptions partition_opts{};
    // Defaults to the hypotheses derived from the loss partition.
    std::optional<HypothesisPair> hypotheses{};

    // Throws ValidationError on an unusable scenario.
    void validate() const;
};

// Sufficient statistics of one simulated sample.
struct Dataset {
    std::uint64_t n = 0;
    std::uint64_t k = 0;  // binomial heads
    double ybar = 0.0;    // normal sample mean
};

// Draws one dataset at the true effect. The draw depends only on
// (seed, true_effect, n, replicate_index).
Dataset simulate_dataset(const Scenario& scenario, double true_effect, std::uint64_t n,
                         std::uint64_t replicate_index);

SamplingModel to_model(const Scenario& scenario, const Dataset& data);

struct RateRow {
    double true_effect = 0.0;
    std::uint64_t n = 0;
    std::string procedure;
    std::uint64_t replicates = 0;
    std::vector<std::string> verdicts;
    std::vector<std::uint64_t> counts;

    double frequency(const std::string& verdict) const;
    // Monte-Carlo standard error sqrt(p (1 - p) / replicates).
    double standard_error(const std::string& verdict) const;
};

struct RateTable {
    std::string scenario;
    std::uint64_t seed = 0;
    std::uint64_t replicates = 0;
    std::vector<RateRow> rows;

    const RateRow& row(double true_effect, std::uint64_t n, const std::string& procedure) const;
    friend bool operator==(const RateTable&, const RateTable&) = default;
};

inline bool operator==(const RateRow& a, const RateRow& b) {
    return a.true_effect == b.true_effect && a.n == b.n && a.procedure == b.procedure &&
           a.replicates == b.replicates && a.verdicts == b.verdicts && a.counts == b.counts;
}

// Runs every procedure on every replicate of every (effect, n) cell.
// Procedure failures are tallied as "error" verdicts. Cells run on up to
// `threads` threads; the table does not depend on the thread count.
RateTable run_operating_characteristics(const Scenario& scenario, unsigned threads = 1);

// Rows of one cell, computed in isolation.
std::vector<RateRow> run_cell(const Scenario& scenario, double true_effect, std::uint64_t n);

// Coin example: bias b in [-0.5, 0.5] under the demo loss, uniform prior.
Scenario coin_scenario();

// One-sample normal stand-in for the aspirin study: risk difference 0.77%,
// n = 22000, sigma = 0.2, negligible region [-0.02, 0.02].
Scenario aspirin_scenario();

}  // namespace practrel
