#include "practrel/config.hpp"

#include "practrel/errors.hpp"
#include "practrel/rng.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace practrel {

using nlohmann::json;

std::optional<ParameterSpace> ConfigDocument::effective_space() const {
    if (loss) return loss->space();
    return space;
}

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    expect_object(j, path);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.contains(key)) throw ConfigError(join(path, key), "unknown key");
}

const json& require(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw ConfigError(join(path, key), "required key is missing");
    return j.at(key);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
    return v;
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
    return j.contains(key) ? as_number(j.at(key), join(path, key)) : fallback;
}

std::uint64_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw ConfigError(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

template <typename F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

ParameterSpace parse_space(const json& j, PartitionOptions& opts) {
    const std::string path = "parameter_space";
    check_keys(j, path, {"lo", "hi", "grid_size", "root_tol"});
    const double lo = as_number(require(j, path, "lo"), path + ".lo");
    const double hi = as_number(require(j, path, "hi"), path + ".hi");
    if (j.contains("grid_size")) {
        opts.grid_size = as_count(j.at("grid_size"), path + ".grid_size");
        if (opts.grid_size < 16) throw ConfigError(path + ".grid_size", "must be >= 16");
    }
    if (j.contains("root_tol")) {
        opts.root_tol = as_number(j.at("root_tol"), path + ".root_tol");
        if (!(opts.root_tol > 0.0)) throw ConfigError(path + ".root_tol", "must be > 0");
    }
    return wrap(path, [&] { return ParameterSpace(lo, hi); });
}

ActionPair parse_actions(const json& j) {
    const std::string path = "actions";
    check_keys(j, path, {"a0", "a1"});
    auto one = [&](const char* key) {
        const std::string p = join(path, key);
        const json& a = require(j, path, key);
        check_keys(a, p, {"label", "description"});
        std::string label = as_string(require(a, p, "label"), p + ".label");
        std::string desc = a.contains("description") ? as_string(a.at("description"), p + ".description") : "";
        return std::pair{label, desc};
    };
    auto [l0, d0] = one("a0");
    auto [l1, d1] = one("a1");
    return wrap(path, [&] { return ActionPair(l0, l1, d0, d1); });
}

std::vector<double> number_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], fmt::format("{}[{}]", path, i)));
    return out;
}

LossSpec::Params parse_loss_params(LossKind kind, const json& j, const std::string& path) {
    switch (kind) {
    case LossKind::piecewise_linear:
        check_keys(j, path, {"intercept", "center", "slope_left", "slope_right"});
        return HingeLoss{number_or(j, path, "intercept", 0.0), number_or(j, path, "center", 0.0),
                         number_or(j, path, "slope_left", 0.0), number_or(j, path, "slope_right", 0.0)};
    case LossKind::quadratic:
        check_keys(j, path, {"c", "center", "offset"});
        return QuadraticLoss{number_or(j, path, "c", 0.0), number_or(j, path, "center", 0.0),
                             number_or(j, path, "offset", 0.0)};
    case LossKind::table:
        check_keys(j, path, {"grid", "values"});
        return TableLoss{number_list(require(j, path, "grid"), path + ".grid"),
                         number_list(require(j, path, "values"), path + ".values")};
    case LossKind::builtin_coin_demo:
        check_keys(j, path, {});
        return std::monostate{};
    }
    return std::monostate{};
}

LossSpec parse_loss(const json& j, const std::optional<ParameterSpace>& space) {
    const std::string path = "loss";
    check_keys(j, path, {"kind", "params_a0", "params_a1"});
    const std::string kind_name = as_string(require(j, path, "kind"), path + ".kind");
    LossKind kind;
    if (kind_name == "piecewise_linear")
        kind = LossKind::piecewise_linear;
    else if (kind_name == "quadratic")
        kind = LossKind::quadratic;
    else if (kind_name == "table")
        kind = LossKind::table;
    else if (kind_name == "builtin_coin_demo")
        kind = LossKind::builtin_coin_demo;
    else
        throw ConfigError(path + ".kind", fmt::format("unknown loss kind '{}'", kind_name));

    if (kind == LossKind::builtin_coin_demo) {
        for (const char* key : {"params_a0", "params_a1"})
            if (j.contains(key)) parse_loss_params(kind, j.at(key), join(path, key));
        auto demo = LossSpec::coin_demo();
        if (space && !(*space == demo.space()))
            throw ConfigError("parameter_space", "builtin_coin_demo is defined on [-0.5, 0.5]");
        return demo;
    }
    if (!space) throw ConfigError("parameter_space", "required key is missing");
    const auto a0 = parse_loss_params(kind, require(j, path, "params_a0"), path + ".params_a0");
    const auto a1 = parse_loss_params(kind, require(j, path, "params_a1"), path + ".params_a1");
    switch (kind) {
    case LossKind::piecewise_linear:
        return LossSpec::piecewise_linear(*space, std::get<HingeLoss>(a0), std::get<HingeLoss>(a1));
    case LossKind::quadratic:
        return LossSpec::quadratic(*space, std::get<QuadraticLoss>(a0), std::get<QuadraticLoss>(a1));
    default:
        return LossSpec::table(*space, std::get<TableLoss>(a0), std::get<TableLoss>(a1));
    }
}

// Entries are a number (singleton), [lo, hi] (closed) or [lo, hi, lo_open, hi_open].
RegionSet parse_region(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of intervals or values");
    std::vector<Interval> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = fmt::format("{}[{}]", path, i);
        const json& e = j[i];
        if (e.is_number()) {
            out.push_back(Interval::point(as_number(e, p)));
            continue;
        }
        if (!e.is_array() || (e.size() != 2 && e.size() != 4))
            throw ConfigError(p, "expected a number, [lo, hi] or [lo, hi, lo_open, hi_open]");
        Interval iv{as_number(e[0], p + "[0]"), as_number(e[1], p + "[1]"), false, false};
        if (e.size() == 4) {
            iv.lo_open = as_bool(e[2], p + "[2]");
            iv.hi_open = as_bool(e[3], p + "[3]");
        }
        if (iv.lo > iv.hi) throw ConfigError(p, "interval has lo > hi");
        out.push_back(iv);
    }
    return wrap(path, [&] { return RegionSet(std::move(out)); });
}

struct PriorValues {
    std::optional<double> alpha, beta, mean, sd;
};

PriorValues parse_prior(const json& j, const std::string& path) {
    check_keys(j, path, {"alpha", "beta", "mean", "sd"});
    PriorValues p;
    if (j.contains("alpha")) p.alpha = as_number(j.at("alpha"), path + ".alpha");
    if (j.contains("beta")) p.beta = as_number(j.at("beta"), path + ".beta");
    if (j.contains("mean")) p.mean = as_number(j.at("mean"), path + ".mean");
    if (j.contains("sd")) p.sd = as_number(j.at("sd"), path + ".sd");
    return p;
}

void check_prior_family(const PriorValues& p, ModelFamily family, const std::string& path) {
    if (family == ModelFamily::binomial && (p.mean || p.sd))
        throw ConfigError(path, "binomial models take a beta prior (alpha, beta)");
    if (family == ModelFamily::normal && (p.alpha || p.beta))
        throw ConfigError(path, "normal models take a normal prior (mean, sd)");
}

ModelFamily parse_family(const json& j, const std::string& path) {
    const auto name = as_string(j, path);
    if (name == "binomial") return ModelFamily::binomial;
    if (name == "normal") return ModelFamily::normal;
    throw ConfigError(path, fmt::format("unknown model family '{}'", name));
}

SamplingModel parse_model(const json& j, const std::optional<PriorValues>& top_prior) {
    const std::string path = "model";
    check_keys(j, path, {"family", "data", "sigma", "prior"});
    const auto family = parse_family(require(j, path, "family"), path + ".family");
    if (j.contains("prior") && top_prior)
        throw ConfigError("prior", "prior given both at top level and inside model");
    PriorValues prior = j.contains("prior") ? parse_prior(j.at("prior"), path + ".prior")
                                            : top_prior.value_or(PriorValues{});
    const std::string prior_path = j.contains("prior") ? path + ".prior" : "prior";
    check_prior_family(prior, family, prior_path);
    const json& data = require(j, path, "data");
    const std::string dpath = path + ".data";
    if (family == ModelFamily::binomial) {
        if (j.contains("sigma")) throw ConfigError(path + ".sigma", "only valid for the normal family");
        check_keys(data, dpath, {"n", "k"});
        BinomialModel m{as_count(require(data, dpath, "n"), dpath + ".n"),
                        as_count(require(data, dpath, "k"), dpath + ".k"), prior.alpha.value_or(1.0),
                        prior.beta.value_or(1.0)};
        wrap(path, [&] { m.validate(); });
        return m;
    }
    check_keys(data, dpath, {"n", "ybar"});
    NormalKnownVarModel m{as_count(require(data, dpath, "n"), dpath + ".n"),
                          as_number(require(data, dpath, "ybar"), dpath + ".ybar"),
                          as_number(require(j, path, "sigma"), path + ".sigma"), prior.mean.value_or(0.0),
                          prior.sd.value_or(1.0)};
    wrap(path, [&] { m.validate(); });
    return m;
}

std::pair<double, double> parse_ratio(const json& j, const std::string& path) {
    if (j.is_number()) {
        const double v = as_number(j, path);
        wrap(path, [&] { (void)LossRatio::scalar(v); });
        return {v, v};
    }
    if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected a number or [lo, hi]");
    const double lo = as_number(j[0], path + "[0]");
    const double hi = as_number(j[1], path + "[1]");
    wrap(path, [&] { (void)LossRatio::interval(lo, hi); });
    return {lo, hi};
}

DecisionConfig parse_decision(const json& j) {
    const std::string path = "decision";
    check_keys(j, path, {"loss_ratio", "rule"});
    DecisionConfig d;
    if (j.contains("rule")) {
        d.rule = as_string(j.at("rule"), path + ".rule");
        if (d.rule != "hypothesis_ratio" && d.rule != "expected_loss")
            throw ConfigError(path + ".rule", "expected \"hypothesis_ratio\" or \"expected_loss\"");
    }
    if (j.contains("loss_ratio")) {
        std::tie(d.ratio_lo, d.ratio_hi) = parse_ratio(j.at("loss_ratio"), path + ".loss_ratio");
    } else if (d.rule == "hypothesis_ratio") {
        throw ConfigError(path + ".loss_ratio", "required key is missing");
    }
    return d;
}

ProcedureConfig parse_procedure(const json& j, const std::string& path) {
    check_keys(j, path, {"procedure", "label", "settings"});
    ProcedureConfig p;
    p.procedure = as_string(require(j, path, "procedure"), path + ".procedure");
    if (!is_known_procedure(p.procedure))
        throw ConfigError(path + ".procedure", fmt::format("unknown procedure '{}'", p.procedure));
    if (j.contains("label")) p.label = as_string(j.at("label"), path + ".label");
    const json settings = j.contains("settings") ? j.at("settings") : json::object();
    const std::string sp = path + ".settings";
    if (p.procedure == "nhst") {
        check_keys(settings, sp, {"alpha"});
    } else if (p.procedure == "tost") {
        check_keys(settings, sp, {"alpha", "bounds"});
        if (settings.contains("bounds")) {
            const auto b = number_list(settings.at("bounds"), sp + ".bounds");
            if (b.size() != 2 || !(b[0] < b[1])) throw ConfigError(sp + ".bounds", "expected [lo, hi] with lo < hi");
            p.bounds = std::pair{b[0], b[1]};
        }
    } else if (p.procedure == "rope") {
        check_keys(settings, sp, {"mass"});
    } else if (p.procedure == "bayes_factor") {
        check_keys(settings, sp, {"threshold"});
    } else if (p.procedure == "hypothesis_ratio") {
        check_keys(settings, sp, {"loss_ratio", "restricted_space"});
        if (settings.contains("loss_ratio"))
            std::tie(p.ratio_lo, p.ratio_hi) = parse_ratio(settings.at("loss_ratio"), sp + ".loss_ratio");
        if (settings.contains("restricted_space"))
            p.restricted_space = as_bool(settings.at("restricted_space"), sp + ".restricted_space");
    } else {
        check_keys(settings, sp, {});
    }
    p.alpha = number_or(settings, sp, "alpha", p.alpha);
    if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw ConfigError(sp + ".alpha", "must lie in (0, 1)");
    p.mass = number_or(settings, sp, "mass", p.mass);
    if (!(p.mass > 0.0 && p.mass < 1.0)) throw ConfigError(sp + ".mass", "must lie in (0, 1)");
    p.bf_threshold = number_or(settings, sp, "threshold", p.bf_threshold);
    if (!(p.bf_threshold >= 1.0)) throw ConfigError(sp + ".threshold", "must be >= 1");
    return p;
}

std::vector<ProcedureConfig> parse_procedures(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of procedures");
    std::vector<ProcedureConfig> out;
    std::set<std::string> names;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = fmt::format("{}[{}]", path, i);
        out.push_back(parse_procedure(j[i], p));
        if (!names.insert(out.back().name()).second)
            throw ConfigError(p, fmt::format("duplicate procedure label '{}'", out.back().name()));
    }
    return out;
}

Scenario parse_scenario(const json& j, const ConfigDocument& doc, const std::optional<PriorValues>& top_prior) {
    const std::string path = "scenario";
    check_keys(j, path, {"name", "family", "sigma", "prior", "true_effects", "sample_sizes", "replicates",
                         "procedures", "rng"});
    if (!doc.loss) throw ConfigError("loss", "required key is missing (needed by scenario)");
    Scenario s{.name = j.contains("name") ? as_string(j.at("name"), path + ".name") : "scenario",
               .loss = *doc.loss};
    s.family = parse_family(require(j, path, "family"), path + ".family");
    if (j.contains("prior") && top_prior)
        throw ConfigError("prior", "prior given both at top level and inside scenario");
    const PriorValues prior =
        j.contains("prior") ? parse_prior(j.at("prior"), path + ".prior") : top_prior.value_or(PriorValues{});
    check_prior_family(prior, s.family, j.contains("prior") ? path + ".prior" : "prior");
    if (s.family == ModelFamily::normal) {
        s.sigma = as_number(require(j, path, "sigma"), path + ".sigma");
        s.prior_mean = prior.mean.value_or(0.0);
        s.prior_sd = prior.sd.value_or(1.0);
    } else {
        if (j.contains("sigma")) throw ConfigError(path + ".sigma", "only valid for the normal family");
        s.prior_alpha = prior.alpha.value_or(1.0);
        s.prior_beta = prior.beta.value_or(1.0);
    }
    s.true_effects = number_list(require(j, path, "true_effects"), path + ".true_effects");
    const json& sizes = require(j, path, "sample_sizes");
    if (!sizes.is_array()) throw ConfigError(path + ".sample_sizes", "expected an array of counts");
    for (std::size_t i = 0; i < sizes.size(); ++i)
        s.sample_sizes.push_back(as_count(sizes[i], fmt::format("{}.sample_sizes[{}]", path, i)));
    s.replicates = as_count(require(j, path, "replicates"), path + ".replicates");
    s.procedures = parse_procedures(require(j, path, "procedures"), path + ".procedures");
    if (j.contains("rng") && as_string(j.at("rng"), path + ".rng") != kRngName)
        throw ConfigError(path + ".rng", fmt::format("only \"{}\" is supported", kRngName));
    s.seed = doc.seed.value_or(0);
    s.partition_opts = doc.partition_opts;
    if (doc.hypotheses) s.hypotheses = doc.hypotheses;
    wrap(path, [&] { s.validate(); });
    return s;
}

OutputConfig parse_output(const json& j) {
    const std::string path = "output";
    check_keys(j, path, {"format", "path"});
    OutputConfig o;
    if (j.contains("format")) {
        const auto f = as_string(j.at("format"), path + ".format");
        if (f == "csv")
            o.format = OutputFormat::csv;
        else if (f == "json")
            o.format = OutputFormat::json;
        else
            throw ConfigError(path + ".format", "expected \"csv\" or \"json\"");
    }
    if (j.contains("path")) o.path = as_string(j.at("path"), path + ".path");
    return o;
}

}  // namespace

ConfigDocument parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", fmt::format("syntax error: {}", e.what()));
    }
    check_keys(root, "", {"spec_version", "parameter_space", "actions", "loss", "hypotheses", "model", "prior",
                          "decision", "comparators", "scenario", "output", "seed"});

    ConfigDocument doc;
    if (root.contains("spec_version")) {
        const auto v = as_count(root.at("spec_version"), "spec_version");
        if (v != 1) throw ConfigError("spec_version", fmt::format("unsupported version {}", v));
    }
    if (root.contains("seed")) doc.seed = as_count(root.at("seed"), "seed");
    if (root.contains("parameter_space")) doc.space = parse_space(root.at("parameter_space"), doc.partition_opts);
    if (root.contains("actions")) doc.actions = parse_actions(root.at("actions"));
    if (root.contains("loss")) doc.loss = parse_loss(root.at("loss"), doc.space);
    if (root.contains("hypotheses")) {
        const json& h = root.at("hypotheses");
        check_keys(h, "hypotheses", {"h0", "h1", "restricted_space"});
        const auto space = doc.effective_space();
        if (!space) throw ConfigError("parameter_space", "required key is missing (needed by hypotheses)");
        auto h0 = parse_region(require(h, "hypotheses", "h0"), "hypotheses.h0");
        auto h1 = parse_region(require(h, "hypotheses", "h1"), "hypotheses.h1");
        doc.hypotheses = wrap("hypotheses", [&] { return HypothesisPair(*space, h0, h1); });
        if (h.contains("restricted_space"))
            doc.restricted_space = as_bool(h.at("restricted_space"), "hypotheses.restricted_space");
    }
    std::optional<PriorValues> top_prior;
    if (root.contains("prior")) top_prior = parse_prior(root.at("prior"), "prior");
    if (root.contains("model")) doc.model = parse_model(root.at("model"), top_prior);
    if (root.contains("decision")) doc.decision = parse_decision(root.at("decision"));
    if (root.contains("comparators")) doc.comparators = parse_procedures(root.at("comparators"), "comparators");
    if (root.contains("scenario")) doc.scenario = parse_scenario(root.at("scenario"), doc, top_prior);
    if (root.contains("output")) doc.output = parse_output(root.at("output"));
    return doc;
}

ConfigDocument load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", fmt::format("cannot read config file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace practrel
