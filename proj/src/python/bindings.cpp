#include "practrel/cli.hpp"
#include "practrel/comparators.hpp"
#include "practrel/config.hpp"
#include "practrel/decision.hpp"
#include "practrel/errors.hpp"
#include "practrel/sim_harness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace practrel;

namespace {

Action parse_action(const std::string& a) {
    if (a == "a0") return Action::a0;
    if (a == "a1") return Action::a1;
    throw py::value_error("action must be 'a0' or 'a1'");
}

py::dict outcome_dict(const DecisionOutcome& o) {
    py::dict d;
    d["rule"] = o.rule;
    d["decision"] = to_string(o.decision);
    d["posterior_h0"] = o.posterior_h0;
    d["posterior_h1"] = o.posterior_h1;
    d["posterior_odds"] = o.posterior_odds;
    d["threshold_lo"] = o.threshold_lo;
    d["threshold_hi"] = o.threshold_hi;
    d["accuracy_warning"] = o.accuracy_warning;
    return d;
}

py::dict comparator_dict(const ComparatorResult& r) {
    py::dict d;
    d["procedure"] = r.procedure;
    d["statistic"] = r.statistic;
    d["p_value"] = r.p_value;
    d["bayes_factor"] = r.bayes_factor;
    d["verdict"] = r.verdict;
    d["threshold"] = r.threshold;
    return d;
}

py::dict verdict_dict(const IncorporationVerdict& v) {
    py::dict d;
    d["holds"] = v.holds;
    d["witness"] = v.witness;
    return d;
}

py::list rate_rows(const RateTable& t) {
    py::list rows;
    for (const auto& r : t.rows) {
        py::dict freq;
        for (const auto& v : r.verdicts) freq[py::str(v)] = r.frequency(v);
        py::dict d;
        d["true_effect"] = r.true_effect;
        d["n"] = r.n;
        d["procedure"] = r.procedure;
        d["replicates"] = r.replicates;
        d["frequencies"] = freq;
        rows.append(d);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Loss-based practical relevance: partitions, hypothesis checks, decisions and baselines.";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DegenerateEvidenceError>(m, "DegenerateEvidenceError", PyExc_ArithmeticError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<ParameterSpace>(m, "ParameterSpace")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_property_readonly("lo", &ParameterSpace::lo)
        .def_property_readonly("hi", &ParameterSpace::hi)
        .def("contains", &ParameterSpace::contains)
        .def("__repr__", [](const ParameterSpace& s) {
            return "ParameterSpace(" + std::to_string(s.lo()) + ", " + std::to_string(s.hi()) + ")";
        });

    py::class_<Interval>(m, "Interval")
        .def(py::init([](double lo, double hi, bool lo_open, bool hi_open) { return Interval{lo, hi, lo_open, hi_open}; }),
             py::arg("lo"), py::arg("hi"), py::arg("lo_open") = false, py::arg("hi_open") = false)
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def_readonly("lo_open", &Interval::lo_open)
        .def_readonly("hi_open", &Interval::hi_open)
        .def("__contains__", &Interval::contains)
        .def("__eq__", [](const Interval& a, const Interval& b) { return a == b; })
        .def("__repr__", [](const Interval& iv) {
            return std::string(iv.lo_open ? "(" : "[") + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                   (iv.hi_open ? ")" : "]");
        });

    py::class_<RegionSet>(m, "RegionSet")
        .def(py::init<>())
        .def(py::init<std::vector<Interval>>(), py::arg("intervals"))
        .def_property_readonly("intervals", &RegionSet::intervals)
        .def("__contains__", [](const RegionSet& s, double t) { return region_contains(s, t); })
        .def("__len__", &RegionSet::size)
        .def("measure", [](const RegionSet& s) { return region_measure(s); });

    py::class_<LossSpec>(m, "LossSpec")
        .def_static("coin_demo", &LossSpec::coin_demo)
        .def_static(
            "piecewise_linear",
            [](const ParameterSpace& s, std::array<double, 4> a0, std::array<double, 4> a1) {
                return LossSpec::piecewise_linear(s, {a0[0], a0[1], a0[2], a0[3]}, {a1[0], a1[1], a1[2], a1[3]});
            },
            py::arg("space"), py::arg("a0"), py::arg("a1"),
            "Each action is (intercept, center, slope_left, slope_right).")
        .def_static(
            "quadratic",
            [](const ParameterSpace& s, std::array<double, 3> a0, std::array<double, 3> a1) {
                return LossSpec::quadratic(s, {a0[0], a0[1], a0[2]}, {a1[0], a1[1], a1[2]});
            },
            py::arg("space"), py::arg("a0"), py::arg("a1"), "Each action is (c, center, offset).")
        .def_static(
            "table",
            [](const ParameterSpace& s, std::vector<double> grid, std::vector<double> a0, std::vector<double> a1) {
                return LossSpec::table(s, {grid, std::move(a0)}, {grid, std::move(a1)});
            },
            py::arg("space"), py::arg("grid"), py::arg("a0"), py::arg("a1"))
        .def_property_readonly("space", &LossSpec::space)
        .def("evaluate", [](const LossSpec& s, double t, const std::string& a) { return evaluate_loss(s, t, parse_action(a)); },
             py::arg("theta"), py::arg("action"))
        .def("difference", [](const LossSpec& s, double t) { return loss_difference(s, t); }, py::arg("theta"))
        .def("is_relevant", [](const LossSpec& s, double t) { return is_practically_relevant(s, t); }, py::arg("theta"))
        .def("violations", [](const LossSpec& s) { return validate_loss_spec(s).violations; });

    py::class_<RelevancePartition>(m, "RelevancePartition")
        .def_readonly("space", &RelevancePartition::space)
        .def_readonly("negligible", &RelevancePartition::negligible)
        .def_readonly("relevant", &RelevancePartition::relevant)
        .def_readonly("crossings", &RelevancePartition::crossings);

    m.def(
        "partition",
        [](const LossSpec& spec, std::size_t grid_size, double root_tol) {
            return partition(spec, PartitionOptions{grid_size, root_tol});
        },
        py::arg("spec"), py::arg("grid_size") = 4096, py::arg("root_tol") = 1e-9);

    py::class_<HypothesisPair>(m, "HypothesisPair")
        .def(py::init<ParameterSpace, RegionSet, RegionSet>(), py::arg("space"), py::arg("h0"), py::arg("h1"))
        .def_property_readonly("h0", &HypothesisPair::h0)
        .def_property_readonly("h1", &HypothesisPair::h1)
        .def("covers_space", &HypothesisPair::covers_space, py::arg("tol") = 1e-9);

    m.def("derive_hypotheses", &derive_hypotheses, py::arg("partition"));
    m.def(
        "check_complete",
        [](const HypothesisPair& p, const LossSpec& s, bool restrict) {
            CheckOptions o;
            o.restrict_to_pair = restrict;
            return verdict_dict(check_complete(p, s, o));
        },
        py::arg("pair"), py::arg("spec"), py::arg("restrict_to_pair") = false);
    m.def(
        "check_partial", [](const HypothesisPair& p, const LossSpec& s) { return verdict_dict(check_partial(p, s)); },
        py::arg("pair"), py::arg("spec"));

    py::class_<BinomialModel>(m, "BinomialModel")
        .def(py::init([](std::uint64_t n, std::uint64_t k, double a, double b) { return BinomialModel{n, k, a, b}; }),
             py::arg("n"), py::arg("k"), py::arg("prior_alpha") = 1.0, py::arg("prior_beta") = 1.0);
    py::class_<NormalKnownVarModel>(m, "NormalKnownVarModel")
        .def(py::init([](std::uint64_t n, double ybar, double sigma, double pm, double psd) {
                 return NormalKnownVarModel{n, ybar, sigma, pm, psd};
             }),
             py::arg("n"), py::arg("ybar"), py::arg("sigma"), py::arg("prior_mean") = 0.0, py::arg("prior_sd") = 1.0);

    py::class_<PosteriorModel>(m, "PosteriorModel")
        .def_static("beta", &PosteriorModel::beta, py::arg("alpha"), py::arg("beta"), py::arg("effect_offset") = -0.5)
        .def_static("normal", &PosteriorModel::normal, py::arg("mean"), py::arg("sd"))
        .def_property_readonly("family", [](const PosteriorModel& p) { return to_string(p.family()); })
        .def_property_readonly("params", [](const PosteriorModel& p) { return std::pair{p.param1(), p.param2()}; })
        .def("cdf", &PosteriorModel::cdf)
        .def("quantile", &PosteriorModel::quantile)
        .def("density", &PosteriorModel::density)
        .def("mean", &PosteriorModel::mean)
        .def("sd", &PosteriorModel::sd)
        .def("region_prob", [](const PosteriorModel& p, const RegionSet& s) { return posterior_region_prob(p, s); })
        .def("credible_interval", [](const PosteriorModel& p, double mass) { return credible_interval(p, mass); },
             py::arg("mass") = 0.95);

    m.def("posterior_update", [](const SamplingModel& model) { return posterior_update(model); }, py::arg("model"));

    m.def(
        "decide",
        [](const PosteriorModel& post, const HypothesisPair& pair, double lo, std::optional<double> hi, bool restricted) {
            return outcome_dict(bayes_two_action_decision(post, pair, LossRatio::interval(lo, hi.value_or(lo)), restricted));
        },
        py::arg("posterior"), py::arg("pair"), py::arg("ratio"), py::arg("ratio_hi") = py::none(),
        py::arg("restricted_space") = false);
    m.def(
        "expected_loss_decision",
        [](const PosteriorModel& post, const LossSpec& spec) { return outcome_dict(expected_loss_decision(post, spec)); },
        py::arg("posterior"), py::arg("spec"));

    m.def(
        "nhst_point_null",
        [](const SamplingModel& model, double alpha) { return comparator_dict(nhst_point_null(model, alpha)); },
        py::arg("model"), py::arg("alpha") = 0.05);
    m.def(
        "tost_equivalence",
        [](const NormalKnownVarModel& model, std::pair<double, double> bounds, double alpha) {
            return comparator_dict(tost_equivalence(model, bounds, alpha));
        },
        py::arg("model"), py::arg("bounds"), py::arg("alpha") = 0.05);
    m.def(
        "rope_decision",
        [](const PosteriorModel& post, const RegionSet& rope, double mass) {
            return comparator_dict(rope_decision(post, rope, mass));
        },
        py::arg("posterior"), py::arg("rope"), py::arg("mass") = 0.95);
    m.def(
        "interval_bayes_factor",
        [](const SamplingModel& model, const HypothesisPair& pair, double threshold) {
            return comparator_dict(interval_bayes_factor(model, pair, threshold));
        },
        py::arg("model"), py::arg("pair"), py::arg("threshold") = 3.0);

    m.def(
        "simulate",
        [](const std::string& config_path, unsigned threads, std::optional<std::uint64_t> seed) {
            auto doc = load_config(config_path);
            if (!doc.scenario) throw ConfigError("scenario", "required key is missing");
            if (seed) doc.scenario->seed = *seed;
            RateTable table;
            {
                py::gil_scoped_release release;
                table = run_operating_characteristics(*doc.scenario, threads);
            }
            return rate_rows(table);
        },
        py::arg("config"), py::arg("threads") = 1, py::arg("seed") = py::none(),
        "Runs the scenario section of a config file and returns one dict per (effect, n, procedure).");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");

    m.attr("__version__") = "0.1.0";
}
