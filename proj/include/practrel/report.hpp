#pragma once

#include "practrel/comparators.hpp"
#include "practrel/decision.hpp"
#include "practrel/sim_harness.hpp"

#include <string>
#include <vector>

namespace practrel {

// Serializers for the CLI artifacts. CSV: comma separated, header row, LF
// line endings, numbers in %.12g. JSON: keys in a fixed order, two-space
// indent, trailing newline. Non-finite numbers are written as the strings
// "inf", "-inf" and "nan".

std::string format_number(double x);

std::string partition_csv(const RelevancePartition& part);
std::string partition_json(const RelevancePartition& part);

struct HypothesisReport {
    IncorporationVerdict complete;
    IncorporationVerdict partial;
};

std::string hypotheses_csv(const HypothesisPair& pair, const HypothesisReport& report);
std::string hypotheses_json(const HypothesisPair& pair, const HypothesisReport& report);

struct PosteriorSummary {
    Family family = Family::beta;
    double param1 = 0.0;
    double param2 = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    double ci_lo = 0.0;  // central 95% interval
    double ci_hi = 0.0;
};

PosteriorSummary summarize(const PosteriorModel& post);

std::string decision_csv(const DecisionOutcome& outcome, const PosteriorSummary& posterior);
std::string decision_json(const DecisionOutcome& outcome, const PosteriorSummary& posterior,
                          const ActionPair* actions = nullptr);

std::string comparators_csv(const std::vector<ComparatorResult>& results);
std::string comparators_json(const std::vector<ComparatorResult>& results, const PosteriorSummary& posterior);

// One row per (cell, procedure, verdict).
std::string rates_csv(const RateTable& table);
std::string rates_json(const RateTable& table);
// Fixed-width table, one line per (cell, procedure) with every verdict frequency.
std::string rates_console(const RateTable& table);

}  // namespace practrel
