#include "practrel/report.hpp"

#include "practrel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>

namespace practrel {

using ojson = nlohmann::ordered_json;

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    return fmt::format("{:.12g}", x);
}

namespace {

ojson num(double x) {
    if (!std::isfinite(x)) return format_number(x);
    return x == 0.0 ? 0.0 : x;
}

ojson opt_num(const std::optional<double>& x) {
    return x ? num(*x) : ojson(nullptr);
}

std::string dump(const ojson& j) {
    return j.dump(2) + "\n";
}

const char* flag(bool b) {
    return b ? "true" : "false";
}

struct LabelledInterval {
    Interval iv;
    const char* label;
};

std::vector<LabelledInterval> labelled(const RelevancePartition& part) {
    std::vector<LabelledInterval> rows;
    for (const auto& iv : part.negligible.intervals()) rows.push_back({iv, "negligible"});
    for (const auto& iv : part.relevant.intervals()) rows.push_back({iv, "relevant"});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.iv.lo != b.iv.lo) return a.iv.lo < b.iv.lo;
        return !a.iv.lo_open && b.iv.lo_open;
    });
    return rows;
}

ojson interval_json(const Interval& iv) {
    return ojson{{"lo", num(iv.lo)}, {"hi", num(iv.hi)}, {"lo_open", iv.lo_open}, {"hi_open", iv.hi_open}};
}

ojson region_json(const RegionSet& set) {
    ojson out = ojson::array();
    for (const auto& iv : set.intervals()) out.push_back(interval_json(iv));
    return out;
}

void region_rows(std::string& out, const RegionSet& set, const char* label) {
    for (const auto& iv : set.intervals())
        out += fmt::format("{},{},{},{},{}\n", format_number(iv.lo), format_number(iv.hi), flag(iv.lo_open),
                           flag(iv.hi_open), label);
}

ojson posterior_json(const PosteriorSummary& p) {
    ojson params;
    if (p.family == Family::beta)
        params = ojson{{"alpha", num(p.param1)}, {"beta", num(p.param2)}};
    else
        params = ojson{{"mean", num(p.param1)}, {"sd", num(p.param2)}};
    return ojson{{"family", to_string(p.family)},
                 {"parameters", params},
                 {"mean", num(p.mean)},
                 {"sd", num(p.sd)},
                 {"ci95", ojson::array({num(p.ci_lo), num(p.ci_hi)})}};
}

ojson comparator_json(const ComparatorResult& r) {
    return ojson{{"procedure", r.procedure},         {"statistic", num(r.statistic)},
                 {"p_value", opt_num(r.p_value)},    {"bayes_factor", opt_num(r.bayes_factor)},
                 {"log_bayes_factor", opt_num(r.log_bayes_factor)},
                 {"threshold", num(r.threshold)},    {"verdict", r.verdict}};
}

}  // namespace

std::string partition_csv(const RelevancePartition& part) {
    std::string out = "lo,hi,lo_open,hi_open,label\n";
    for (const auto& row : labelled(part))
        out += fmt::format("{},{},{},{},{}\n", format_number(row.iv.lo), format_number(row.iv.hi),
                           flag(row.iv.lo_open), flag(row.iv.hi_open), row.label);
    return out;
}

std::string partition_json(const RelevancePartition& part) {
    ojson regions = ojson::array();
    for (const auto& row : labelled(part)) {
        auto j = interval_json(row.iv);
        j["label"] = row.label;
        regions.push_back(std::move(j));
    }
    ojson crossings = ojson::array();
    for (double c : part.crossings) crossings.push_back(num(c));
    return dump(ojson{{"space", ojson::array({num(part.space.lo()), num(part.space.hi())})},
                      {"regions", regions},
                      {"negligible", region_json(part.negligible)},
                      {"relevant", region_json(part.relevant)},
                      {"crossings", crossings}});
}

std::string hypotheses_csv(const HypothesisPair& pair, const HypothesisReport& report) {
    std::string out = "lo,hi,lo_open,hi_open,label\n";
    region_rows(out, pair.h0(), "h0");
    region_rows(out, pair.h1(), "h1");
    out += "\ncheck,holds,witness\n";
    auto row = [&](const char* name, const IncorporationVerdict& v) {
        out += fmt::format("{},{},{}\n", name, flag(v.holds), v.witness ? format_number(*v.witness) : "");
    };
    row("complete", report.complete);
    row("partial", report.partial);
    return out;
}

std::string hypotheses_json(const HypothesisPair& pair, const HypothesisReport& report) {
    // `witness` is the first available counterexample, preferring the partial check.
    std::optional<double> witness = report.partial.witness ? report.partial.witness : report.complete.witness;
    return dump(ojson{{"complete", report.complete.holds},
                      {"partial", report.partial.holds},
                      {"witness", opt_num(witness)},
                      {"complete_witness", opt_num(report.complete.witness)},
                      {"partial_witness", opt_num(report.partial.witness)},
                      {"h0", region_json(pair.h0())},
                      {"h1", region_json(pair.h1())},
                      {"covers_space", pair.covers_space()}});
}

PosteriorSummary summarize(const PosteriorModel& post) {
    const auto [lo, hi] = credible_interval(post, 0.95);
    return PosteriorSummary{post.family(), post.param1(), post.param2(), post.mean(), post.sd(), lo, hi};
}

std::string decision_csv(const DecisionOutcome& o, const PosteriorSummary& p) {
    std::string out =
        "rule,decision,posterior_h0,posterior_h1,posterior_odds,threshold_lo,threshold_hi,accuracy_warning,"
        "posterior_mean,posterior_sd,ci95_lo,ci95_hi\n";
    auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", o.rule, to_string(o.decision),
                       opt(o.posterior_h0), opt(o.posterior_h1), opt(o.posterior_odds),
                       format_number(o.threshold_lo), format_number(o.threshold_hi), flag(o.accuracy_warning),
                       format_number(p.mean), format_number(p.sd), format_number(p.ci_lo), format_number(p.ci_hi));
    return out;
}

std::string decision_json(const DecisionOutcome& o, const PosteriorSummary& p, const ActionPair* actions) {
    ojson j{{"rule", o.rule},
            {"decision", to_string(o.decision)},
            {"posterior_h0", opt_num(o.posterior_h0)},
            {"posterior_h1", opt_num(o.posterior_h1)},
            {"posterior_odds", opt_num(o.posterior_odds)},
            {"threshold_lo", num(o.threshold_lo)},
            {"threshold_hi", num(o.threshold_hi)},
            {"accuracy_warning", o.accuracy_warning}};
    if (actions) {
        const std::string* label = nullptr;
        if (o.decision == Decision::a0) label = &actions->a0_label;
        if (o.decision == Decision::a1) label = &actions->a1_label;
        j["action_label"] = label ? ojson(*label) : ojson(nullptr);
    }
    j["posterior"] = posterior_json(p);
    return dump(j);
}

std::string comparators_csv(const std::vector<ComparatorResult>& results) {
    std::string out = "procedure,statistic,p_value,bayes_factor,log_bayes_factor,threshold,verdict\n";
    auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
    for (const auto& r : results)
        out += fmt::format("{},{},{},{},{},{},{}\n", r.procedure, format_number(r.statistic), opt(r.p_value),
                           opt(r.bayes_factor), opt(r.log_bayes_factor), format_number(r.threshold), r.verdict);
    return out;
}

std::string comparators_json(const std::vector<ComparatorResult>& results, const PosteriorSummary& posterior) {
    ojson arr = ojson::array();
    for (const auto& r : results) arr.push_back(comparator_json(r));
    return dump(ojson{{"posterior", posterior_json(posterior)}, {"results", arr}});
}

std::string rates_csv(const RateTable& table) {
    std::string out = "scenario,true_effect,n,procedure,verdict,count,frequency,se\n";
    for (const auto& r : table.rows)
        for (std::size_t i = 0; i < r.verdicts.size(); ++i)
            out += fmt::format("{},{},{},{},{},{},{},{}\n", table.scenario, format_number(r.true_effect), r.n,
                               r.procedure, r.verdicts[i], r.counts[i], format_number(r.frequency(r.verdicts[i])),
                               format_number(r.standard_error(r.verdicts[i])));
    return out;
}

std::string rates_json(const RateTable& table) {
    ojson rows = ojson::array();
    for (const auto& r : table.rows) {
        ojson counts = ojson::object();
        ojson freqs = ojson::object();
        for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
            counts[r.verdicts[i]] = r.counts[i];
            freqs[r.verdicts[i]] = num(r.frequency(r.verdicts[i]));
        }
        rows.push_back(ojson{{"true_effect", num(r.true_effect)},
                             {"n", r.n},
                             {"procedure", r.procedure},
                             {"counts", counts},
                             {"frequencies", freqs}});
    }
    return dump(ojson{{"scenario", table.scenario},
                      {"seed", table.seed},
                      {"rng", kRngName},
                      {"replicates", table.replicates},
                      {"rows", rows}});
}

std::string rates_console(const RateTable& table) {
    std::size_t proc_width = 9;
    for (const auto& r : table.rows) proc_width = std::max(proc_width, r.procedure.size());
    std::string out = fmt::format("scenario {}  seed {}  replicates {}\n", table.scenario, table.seed,
                                  table.replicates);
    out += fmt::format("{:>12} {:>8}  {:<{}}  {}\n", "effect", "n", "procedure", proc_width, "verdict rates");
    for (const auto& r : table.rows) {
        std::string rates;
        for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
            if (r.counts[i] == 0 && r.verdicts[i] == "error") continue;
            rates += fmt::format("{}={:.3f} ", r.verdicts[i], r.frequency(r.verdicts[i]));
        }
        if (!rates.empty()) rates.pop_back();
        out += fmt::format("{:>12} {:>8}  {:<{}}  {}\n", format_number(r.true_effect), r.n, r.procedure, proc_width,
                           rates);
    }
    return out;
}

}  // namespace practrel
