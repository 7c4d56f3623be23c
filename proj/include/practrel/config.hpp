#pragma once

#include "practrel/decision.hpp"
#include "practrel/sim_harness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace practrel {

enum class OutputFormat { csv, json };

struct DecisionConfig {
    // "hypothesis_ratio" or "expected_loss"
    std::string rule = "hypothesis_ratio";
    double ratio_lo = 1.0;
    double ratio_hi = 1.0;
};

struct OutputConfig {
    std::optional<OutputFormat> format;
    std::optional<std::string> path;
};

// Parsed analysis configuration. Every section is optional at parse time;
// each subcommand checks for the sections it needs.
struct ConfigDocument {
    std::optional<ParameterSpace> space;
    PartitionOptions partition_opts;
    std::optional<ActionPair> actions;
    std::optional<LossSpec> loss;
    std::optional<HypothesisPair> hypotheses;
    bool restricted_space = false;
    std::optional<SamplingModel> model;
    std::optional<DecisionConfig> decision;
    std::vector<ProcedureConfig> comparators;
    std::optional<Scenario> scenario;
    OutputConfig output;
    std::optional<std::uint64_t> seed;

    // Space of the loss, else the declared parameter_space.
    std::optional<ParameterSpace> effective_space() const;
};

// Strict parse of a JSON config document: unknown keys, wrong types and
// out-of-range values raise ConfigError naming the key path (and the
// line/column for syntax errors).
ConfigDocument parse_config(const std::string& text);
ConfigDocument load_config(const std::string& path);

}  // namespace practrel
