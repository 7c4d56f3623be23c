#include "practrel/cli.hpp"

#include "practrel/config.hpp"
#include "practrel/errors.hpp"
#include "practrel/report.hpp"
#include "practrel/svg_plot.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <ostream>

namespace practrel {

namespace {

class IoError : public Error {
public:
    using Error::Error;
};

struct GlobalOptions {
    std::string config;
    std::string output;
    std::string format;
    bool plot = false;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid;
};

struct Context {
    const GlobalOptions& opts;
    ConfigDocument doc;
    std::ostream& out;
    std::ostream& err;

    OutputFormat format(OutputFormat fallback) const {
        if (opts.format == "csv") return OutputFormat::csv;
        if (opts.format == "json") return OutputFormat::json;
        return doc.output.format.value_or(fallback);
    }

    std::optional<std::string> output_path() const {
        if (!opts.output.empty()) return opts.output;
        return doc.output.path;
    }

    PartitionOptions partition_opts() const {
        auto p = doc.partition_opts;
        if (opts.grid) p.grid_size = std::max<std::size_t>(*opts.grid, 16);
        return p;
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(fmt::format("cannot open '{}' for writing", path));
    f << content;
    f.close();
    if (!f) throw IoError(fmt::format("failed writing '{}'", path));
}

void emit(Context& ctx, const std::string& content) {
    if (auto path = ctx.output_path())
        write_file(*path, content);
    else
        ctx.out << content;
}

std::string sibling(const std::optional<std::string>& output, const std::string& fallback_stem,
                    const std::string& extension) {
    std::filesystem::path p = output ? std::filesystem::path(*output) : std::filesystem::path(fallback_stem);
    p.replace_extension(extension);
    return p.string();
}

const LossSpec& need_loss(const Context& ctx) {
    if (!ctx.doc.loss) throw ConfigError("loss", "required key is missing");
    return *ctx.doc.loss;
}

PlotSpec plot_spec(const Context& ctx) {
    PlotSpec p;
    if (ctx.opts.grid) p.grid = *ctx.opts.grid;
    if (ctx.doc.actions) {
        p.a0_label = "a0: " + ctx.doc.actions->a0_label;
        p.a1_label = "a1: " + ctx.doc.actions->a1_label;
    }
    return p;
}

std::optional<HypothesisPair> pair_for(const Context& ctx) {
    if (ctx.doc.hypotheses) return ctx.doc.hypotheses;
    if (ctx.doc.loss) return derive_hypotheses(partition(*ctx.doc.loss, ctx.partition_opts()));
    return std::nullopt;
}

int cmd_partition(Context& ctx) {
    const auto& loss = need_loss(ctx);
    const auto part = partition(loss, ctx.partition_opts());
    emit(ctx, ctx.format(OutputFormat::csv) == OutputFormat::csv ? partition_csv(part) : partition_json(part));
    if (ctx.opts.plot) write_file(sibling(ctx.output_path(), "partition", ".svg"), render_svg(loss, part, plot_spec(ctx)));
    return kExitOk;
}

int cmd_check_hypotheses(Context& ctx) {
    const auto& loss = need_loss(ctx);
    if (!ctx.doc.hypotheses) throw ConfigError("hypotheses", "required key is missing");
    const auto& pair = *ctx.doc.hypotheses;
    CheckOptions opts;
    opts.grid_size = ctx.partition_opts().grid_size;
    opts.root_tol = ctx.partition_opts().root_tol;
    opts.restrict_to_pair = ctx.doc.restricted_space;
    const HypothesisReport report{check_complete(pair, loss, opts), check_partial(pair, loss, opts)};
    emit(ctx, ctx.format(OutputFormat::json) == OutputFormat::json ? hypotheses_json(pair, report)
                                                                   : hypotheses_csv(pair, report));
    if (ctx.opts.plot) {
        const auto part = partition(loss, ctx.partition_opts());
        write_file(sibling(ctx.output_path(), "hypotheses", ".svg"), render_svg(loss, part, plot_spec(ctx)));
    }
    return kExitOk;
}

int cmd_decide(Context& ctx) {
    if (!ctx.doc.model) throw ConfigError("model", "required key is missing");
    if (!ctx.doc.decision) throw ConfigError("decision", "required key is missing");
    const auto& dc = *ctx.doc.decision;
    const auto post = posterior_update(*ctx.doc.model);
    DecisionOutcome outcome;
    if (dc.rule == "expected_loss") {
        outcome = expected_loss_decision(post, need_loss(ctx));
    } else {
        const auto pair = pair_for(ctx);
        if (!pair) throw ConfigError("hypotheses", "required key is missing (or give a loss to derive them)");
        outcome = bayes_two_action_decision(post, *pair, LossRatio::interval(dc.ratio_lo, dc.ratio_hi),
                                            ctx.doc.restricted_space);
    }
    const auto summary = summarize(post);
    const ActionPair* actions = ctx.doc.actions ? &*ctx.doc.actions : nullptr;
    emit(ctx, ctx.format(OutputFormat::json) == OutputFormat::json ? decision_json(outcome, summary, actions)
                                                                   : decision_csv(outcome, summary));
    return kExitOk;
}

int cmd_compare(Context& ctx) {
    if (!ctx.doc.model) throw ConfigError("model", "required key is missing");
    if (ctx.doc.comparators.empty()) throw ConfigError("comparators", "required key is missing");
    ProcedureContext pc;
    if (ctx.doc.loss) pc.loss = &*ctx.doc.loss;
    pc.pair = pair_for(ctx);
    if (pc.pair && pc.pair->h0().size() == 1) pc.negligible_hull = pc.pair->h0().hull();
    std::vector<ComparatorResult> results;
    for (auto proc : ctx.doc.comparators) {
        if (proc.procedure == "hypothesis_ratio" && ctx.doc.restricted_space) proc.restricted_space = true;
        results.push_back(evaluate_procedure(proc, *ctx.doc.model, pc));
    }
    const auto summary = summarize(posterior_update(*ctx.doc.model));
    emit(ctx, ctx.format(OutputFormat::csv) == OutputFormat::csv ? comparators_csv(results)
                                                                 : comparators_json(results, summary));
    return kExitOk;
}

int cmd_simulate(Context& ctx) {
    if (!ctx.doc.scenario) throw ConfigError("scenario", "required key is missing");
    auto scenario = *ctx.doc.scenario;
    if (ctx.opts.seed) scenario.seed = *ctx.opts.seed;
    if (ctx.opts.grid) scenario.partition_opts = ctx.partition_opts();
    const auto table = run_operating_characteristics(scenario, ctx.opts.threads);
    const auto output = ctx.output_path();
    const std::string stem = scenario.name + "_rates";
    write_file(sibling(output, stem, ".csv"), rates_csv(table));
    write_file(sibling(output, stem, ".json"), rates_json(table));
    ctx.out << rates_console(table);
    if (ctx.opts.plot) {
        const auto part = partition(scenario.loss, scenario.partition_opts);
        write_file(sibling(output, stem, ".svg"), render_svg(scenario.loss, part, plot_spec(ctx)));
    }
    return kExitOk;
}

int cmd_plot(Context& ctx) {
    const auto& loss = need_loss(ctx);
    const auto part = partition(loss, ctx.partition_opts());
    emit(ctx, render_svg(loss, part, plot_spec(ctx)));
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Practical relevance analysis: loss-derived regions, hypotheses and decisions", "practrel"};
    app.require_subcommand(1, 1);
    GlobalOptions g;
    std::uint64_t seed = 0;
    std::size_t grid = 0;
    app.add_option("--config", g.config, "Config file (JSON)")->required();
    app.add_option("--output", g.output, "Output file; default is stdout or the config's output.path");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--plot", g.plot, "Also write an SVG plot next to the output");
    app.add_option("--threads", g.threads, "Worker threads for simulate")->check(CLI::Range(1u, 1024u));
    auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
    auto* grid_opt = app.add_option("--grid", grid, "Sampling grid size for plots and partitions")
                         ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));

    const std::vector<std::pair<const char*, const char*>> commands = {
        {"partition", "Split the parameter space into negligible and relevant effects"},
        {"check-hypotheses", "Check whether hypotheses incorporate practical relevance"},
        {"decide", "Bayesian two-action decision"},
        {"compare", "Run the configured baseline procedures on the data"},
        {"simulate", "Operating characteristics of the configured procedures"},
        {"plot", "SVG of both loss curves over the partition"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    if (seed_opt->count()) g.seed = seed;
    if (grid_opt->count()) g.grid = grid;
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        Context ctx{g, load_config(g.config), out, err};
        if (command == "partition") return cmd_partition(ctx);
        if (command == "check-hypotheses") return cmd_check_hypotheses(ctx);
        if (command == "decide") return cmd_decide(ctx);
        if (command == "compare") return cmd_compare(ctx);
        if (command == "simulate") return cmd_simulate(ctx);
        return cmd_plot(ctx);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInput;
    } catch (const ParameterError& e) {
        err << "invalid option: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace practrel
