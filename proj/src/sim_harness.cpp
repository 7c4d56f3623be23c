#include "practrel/sim_harness.hpp"

#include "practrel/errors.hpp"
#include "practrel/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fmt/format.h>
#include <thread>

namespace practrel {

const char* to_string(ModelFamily f) noexcept {
    return f == ModelFamily::binomial ? "binomial" : "normal";
}

namespace {

const std::vector<std::string> kProcedures = {"nhst",         "tost",
                                              "rope",         "bayes_factor",
                                              "hypothesis_ratio", "expected_loss"};

}  // namespace

bool is_known_procedure(const std::string& name) noexcept {
    return std::find(kProcedures.begin(), kProcedures.end(), name) != kProcedures.end();
}

std::vector<std::string> verdict_labels(const std::string& procedure) {
    if (procedure == "nhst") return {"reject", "retain", "error"};
    if (procedure == "tost") return {"equivalent", "not_equivalent", "error"};
    if (procedure == "rope") return {"accept_a0", "accept_a1", "withhold", "error"};
    if (procedure == "bayes_factor") return {"favor_h1", "favor_h0", "inconclusive", "error"};
    if (procedure == "hypothesis_ratio") return {"a0", "a1", "indeterminate", "error"};
    if (procedure == "expected_loss") return {"a0", "a1", "error"};
    throw ValidationError(fmt::format("unknown procedure '{}'", procedure));
}

void Scenario::validate() const {
    if (replicates < 1) throw ValidationError("scenario replicates must be >= 1");
    if (true_effects.empty()) throw ValidationError("scenario needs at least one true effect");
    if (sample_sizes.empty()) throw ValidationError("scenario needs at least one sample size");
    for (double e : true_effects) {
        if (!loss.space().contains(e))
            throw ValidationError(fmt::format("true effect {} lies outside the parameter space", e));
        if (family == ModelFamily::binomial && (e < -0.5 || e > 0.5))
            throw ValidationError(fmt::format("binomial true effect {} outside [-0.5, 0.5]", e));
    }
    for (auto n : sample_sizes)
        if (n < 1) throw ValidationError("scenario sample sizes must be >= 1");
    if (family == ModelFamily::normal) {
        NormalKnownVarModel{1, 0.0, sigma, prior_mean, prior_sd}.validate();
    } else {
        BinomialModel{0, 0, prior_alpha, prior_beta}.validate();
    }
    if (procedures.empty()) throw ValidationError("scenario needs at least one procedure");
    std::vector<std::string> names;
    for (const auto& p : procedures) {
        if (!is_known_procedure(p.procedure))
            throw ValidationError(fmt::format("unknown procedure '{}'", p.procedure));
        if (std::find(names.begin(), names.end(), p.name()) != names.end())
            throw ValidationError(fmt::format("duplicate procedure label '{}'", p.name()));
        names.push_back(p.name());
        if (p.procedure == "hypothesis_ratio") (void)LossRatio::interval(p.ratio_lo, p.ratio_hi);
    }
}

Dataset simulate_dataset(const Scenario& scenario, double true_effect, std::uint64_t n,
                         std::uint64_t replicate_index) {
    Xoshiro256StarStar rng(stream_key(scenario.seed, true_effect, n, replicate_index));
    Dataset d;
    d.n = n;
    if (scenario.family == ModelFamily::binomial) {
        const double pi = true_effect + 0.5;
        for (std::uint64_t i = 0; i < n; ++i)
            if (rng.uniform() < pi) ++d.k;
    } else {
        double sum = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) sum += true_effect + scenario.sigma * rng.normal();
        d.ybar = sum / static_cast<double>(n);
    }
    return d;
}

SamplingModel to_model(const Scenario& scenario, const Dataset& data) {
    if (scenario.family == ModelFamily::binomial)
        return BinomialModel{data.n, data.k, scenario.prior_alpha, scenario.prior_beta};
    return NormalKnownVarModel{data.n, data.ybar, scenario.sigma, scenario.prior_mean,
                               scenario.prior_sd};
}

double RateRow::frequency(const std::string& verdict) const {
    auto it = std::find(verdicts.begin(), verdicts.end(), verdict);
    if (it == verdicts.end())
        throw ValidationError(fmt::format("procedure '{}' has no verdict '{}'", procedure, verdict));
    return static_cast<double>(counts[static_cast<std::size_t>(it - verdicts.begin())]) /
           static_cast<double>(replicates);
}

double RateRow::standard_error(const std::string& verdict) const {
    const double p = frequency(verdict);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(replicates));
}

const RateRow& RateTable::row(double true_effect, std::uint64_t n, const std::string& procedure) const {
    for (const auto& r : rows)
        if (r.true_effect == true_effect && r.n == n && r.procedure == procedure) return r;
    throw ValidationError(
        fmt::format("no rate row for effect {}, n {}, procedure '{}'", true_effect, n, procedure));
}

namespace {

// Loss-derived quantities shared by every cell.
struct ScenarioContext {
    RelevancePartition partition;
    ProcedureContext procedures;
};

ScenarioContext prepare(const Scenario& scenario) {
    scenario.validate();
    auto part = partition(scenario.loss, scenario.partition_opts);
    ProcedureContext pc;
    pc.loss = &scenario.loss;
    pc.pair = scenario.hypotheses ? *scenario.hypotheses : derive_hypotheses(part);
    if (pc.pair->h0().size() == 1) pc.negligible_hull = pc.pair->h0().hull();
    return ScenarioContext{std::move(part), std::move(pc)};
}

std::vector<RateRow> cell_rows(const Scenario& scenario, const ScenarioContext& ctx,
                               double true_effect, std::uint64_t n) {
    std::vector<RateRow> rows;
    for (const auto& proc : scenario.procedures) {
        RateRow row;
        row.true_effect = true_effect;
        row.n = n;
        row.procedure = proc.name();
        row.replicates = scenario.replicates;
        row.verdicts = verdict_labels(proc.procedure);
        row.counts.assign(row.verdicts.size(), 0);
        rows.push_back(std::move(row));
    }
    for (std::uint64_t rep = 0; rep < scenario.replicates; ++rep) {
        const auto model = to_model(scenario, simulate_dataset(scenario, true_effect, n, rep));
        for (std::size_t i = 0; i < scenario.procedures.size(); ++i) {
            std::string verdict;
            try {
                verdict = evaluate_procedure(scenario.procedures[i], model, ctx.procedures).verdict;
            } catch (const Error&) {
                verdict = "error";
            }
            auto& row = rows[i];
            auto it = std::find(row.verdicts.begin(), row.verdicts.end(), verdict);
            ++row.counts[static_cast<std::size_t>(it - row.verdicts.begin())];
        }
    }
    return rows;
}

}  // namespace

ComparatorResult evaluate_procedure(const ProcedureConfig& proc, const SamplingModel& model,
                                    const ProcedureContext& ctx) {
    const auto& p = proc.procedure;
    ComparatorResult r;
    if (p == "nhst") {
        r = nhst_point_null(model, proc.alpha);
    } else if (p == "tost") {
        const auto* normal = std::get_if<NormalKnownVarModel>(&model);
        if (!normal) throw ValidationError("TOST is implemented for the normal model only");
        std::pair<double, double> bounds;
        if (proc.bounds)
            bounds = *proc.bounds;
        else if (ctx.negligible_hull)
            bounds = {ctx.negligible_hull->lo, ctx.negligible_hull->hi};
        else
            throw ValidationError("TOST needs bounds: negligible region is not a single interval");
        r = tost_equivalence(*normal, bounds, proc.alpha);
    } else if (p == "rope") {
        if (!ctx.negligible_hull)
            throw ValidationError("ROPE needs a negligible region that is a single interval");
        r = rope_decision(posterior_update(model), RegionSet{*ctx.negligible_hull}, proc.mass);
    } else if (p == "bayes_factor") {
        if (!ctx.pair) throw ValidationError("bayes_factor needs hypotheses");
        r = interval_bayes_factor(model, *ctx.pair, proc.bf_threshold);
    } else if (p == "hypothesis_ratio") {
        if (!ctx.pair) throw ValidationError("hypothesis_ratio needs hypotheses");
        const auto ratio = LossRatio::interval(proc.ratio_lo, proc.ratio_hi);
        const auto outcome =
            bayes_two_action_decision(posterior_update(model), *ctx.pair, ratio, proc.restricted_space);
        r.procedure = p;
        r.statistic = *outcome.posterior_odds;
        r.threshold = ratio.hi();
        r.verdict = to_string(outcome.decision);
    } else if (p == "expected_loss") {
        if (!ctx.loss) throw ValidationError("expected_loss needs a loss function");
        const auto outcome = expected_loss_decision(posterior_update(model), *ctx.loss);
        r.procedure = p;
        r.statistic = outcome.threshold_hi - outcome.threshold_lo;
        r.verdict = to_string(outcome.decision);
    } else {
        throw ValidationError(fmt::format("unknown procedure '{}'", p));
    }
    r.procedure = proc.name();
    return r;
}

std::vector<RateRow> run_cell(const Scenario& scenario, double true_effect, std::uint64_t n) {
    return cell_rows(scenario, prepare(scenario), true_effect, n);
}

RateTable run_operating_characteristics(const Scenario& scenario, unsigned threads) {
    const auto ctx = prepare(scenario);
    struct Cell {
        double effect;
        std::uint64_t n;
    };
    std::vector<Cell> cells;
    for (double e : scenario.true_effects)
        for (auto n : scenario.sample_sizes) cells.push_back({e, n});

    std::vector<std::vector<RateRow>> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++)
            results[i] = cell_rows(scenario, ctx, cells[i].effect, cells[i].n);
    };
    const unsigned count = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(cells.size()));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    }

    RateTable table;
    table.scenario = scenario.name;
    table.seed = scenario.seed;
    table.replicates = scenario.replicates;
    for (auto& rows : results)
        for (auto& r : rows) table.rows.push_back(std::move(r));
    return table;
}

Scenario coin_scenario() {
    Scenario s{.name = "coin", .loss = LossSpec::coin_demo()};
    s.family = ModelFamily::binomial;
    s.true_effects = {0.0, 0.05, 0.2, 0.3};
    s.sample_sizes = {100, 1000, 10000};
    s.replicates = 500;
    s.seed = 20210301;
    s.procedures = {
        {.procedure = "nhst"},
        {.procedure = "rope"},
        {.procedure = "bayes_factor"},
        {.procedure = "hypothesis_ratio"},
        {.procedure = "expected_loss"},
    };
    return s;
}

Scenario aspirin_scenario() {
    const ParameterSpace space(-0.1, 0.1);
    // a0 (do not recommend): loss grows with |theta|; a1 (recommend): flat cost 0.02.
    Scenario s{.name = "aspirin",
               .loss = LossSpec::piecewise_linear(space, HingeLoss{0.0, 0.0, 1.0, 1.0},
                                                  HingeLoss{0.02, 0.0, 0.0, 0.0})};
    s.family = ModelFamily::normal;
    s.sigma = 0.2;
    s.prior_mean = 0.0;
    s.prior_sd = 0.1;
    s.true_effects = {0.0077};
    s.sample_sizes = {22000};
    s.replicates = 500;
    s.seed = 20210301;
    s.procedures = {
        {.procedure = "nhst"},
        {.procedure = "tost"},
        {.procedure = "rope"},
        {.procedure = "bayes_factor"},
        {.procedure = "hypothesis_ratio"},
        {.procedure = "expected_loss"},
    };
    return s;
}

}  // namespace practrel
