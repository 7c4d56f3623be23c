#include "practrel/cli.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace practrel;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string config(const std::string& name) {
    return std::string(PRACTREL_CONFIG_DIR) + "/" + name + ".json";
}

std::string write(const fs::path& path, const std::string& text) {
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("partition subcommand") {
    auto r = run({"partition", "--config", config("coin_partition")});
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "lo,hi,lo_open,hi_open,label\n"
          "-0.5,-0.106,false,true,relevant\n"
          "-0.106,0.106,false,false,negligible\n"
          "0.106,0.5,true,false,relevant\n");

    r = run({"partition", "--config", config("equal_losses")});
    CHECK(r.out == "lo,hi,lo_open,hi_open,label\n-1,1,false,false,negligible\n");

    r = run({"--format", "json", "partition", "--config", config("coin_partition")});
    CHECK(nlohmann::json::parse(r.out)["regions"].size() == 3);
}

TEST_CASE("check-hypotheses subcommand") {
    auto j = nlohmann::json::parse(run({"check-hypotheses", "--config", config("coin_complete_hypotheses")}).out);
    CHECK(j["complete"] == true);
    CHECK(j["partial"] == true);
    j = nlohmann::json::parse(run({"check-hypotheses", "--config", config("coin_partial_hypotheses")}).out);
    CHECK(j["complete"] == false);
    CHECK(j["partial"] == true);
    CHECK(j["witness"].is_number());

    const auto dir = testing::scratch_dir("cli_h1zero");
    const auto cfg = write(dir / "c.json", R"({"loss": {"kind": "builtin_coin_demo"},
        "hypotheses": {"h0": [], "h1": [0]}})");
    const auto r = run({"check-hypotheses", "--config", cfg});
    CHECK(r.code == kExitOk);
    j = nlohmann::json::parse(r.out);
    CHECK(j["partial"] == false);
    CHECK(j["witness"] == 0.0);
}

TEST_CASE("decide subcommand") {
    auto r = run({"decide", "--config", config("coin_decide")});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["decision"] == "a1");
    r = run({"decide", "--config", config("coin_decide_interval")});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["decision"] == "indeterminate");

    const auto dir = testing::scratch_dir("cli_decide");
    const auto cfg = write(dir / "c.json", R"({"loss": {"kind": "builtin_coin_demo"},
        "model": {"family": "binomial", "data": {"n": 10, "k": 5}},
        "decision": {"loss_ratio": 1}})");
    CHECK(nlohmann::json::parse(run({"decide", "--config", cfg}).out)["decision"] == "a0");
    const auto el = write(dir / "e.json", R"({"loss": {"kind": "builtin_coin_demo"},
        "model": {"family": "binomial", "data": {"n": 1000, "k": 800}},
        "decision": {"rule": "expected_loss"}})");
    const auto j = nlohmann::json::parse(run({"decide", "--config", el}).out);
    CHECK(j["decision"] == "a1");
    CHECK(j["posterior_odds"].is_null());
}

TEST_CASE("compare subcommand") {
    auto r = run({"compare", "--config", config("coin_compare")});
    CHECK(r.code == kExitOk);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
    CHECK(r.out.find("nhst,") != std::string::npos);
    r = run({"compare", "--config", config("coin_compare"), "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["results"].size() == 5);
}

TEST_CASE("simulate subcommand writes both artifacts") {
    const auto dir = testing::scratch_dir("cli_sim");
    auto text = slurp(config("coin_scenario"));
    text.replace(text.find("\"replicates\": 500"), 17, "\"replicates\": 1");
    const auto cfg = write(dir / "one.json", text);
    const auto r = run({"simulate", "--config", cfg, "--output", (dir / "rates.csv").string(), "--threads", "3"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("hypothesis_ratio") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir / "rates.json"));
    for (const auto& row : j["rows"])
        for (const auto& [verdict, f] : row["frequencies"].items()) CHECK((f == 0.0 || f == 1.0));
    CHECK(fs::exists(dir / "rates.csv"));
}

TEST_CASE("seed override changes the table") {
    const auto dir = testing::scratch_dir("cli_seed");
    auto text = slurp(config("coin_scenario"));
    text.replace(text.find("\"replicates\": 500"), 17, "\"replicates\": 30");
    const auto cfg = write(dir / "s.json", text);
    run({"simulate", "--config", cfg, "--output", (dir / "a.csv").string()});
    run({"simulate", "--config", cfg, "--output", (dir / "b.csv").string()});
    run({"simulate", "--config", cfg, "--output", (dir / "c.csv").string(), "--seed", "5"});
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(slurp(dir / "a.csv") != slurp(dir / "c.csv"));
}

TEST_CASE("plot subcommand") {
    const auto dir = testing::scratch_dir("cli_plot");
    const auto svg = dir / "coin.svg";
    auto r = run({"plot", "--config", config("coin_partition"), "--output", svg.string()});
    CHECK(r.code == kExitOk);
    const auto text = slurp(svg);
    CHECK(text.find(">-0.106</text>") != std::string::npos);
    CHECK(text.find(">0.106</text>") != std::string::npos);
    CHECK(text.find("treat coin as fair") != std::string::npos);

    r = run({"partition", "--config", config("coin_partition"), "--plot", "--output", (dir / "p.csv").string()});
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(dir / "p.svg"));

#ifdef PRACTREL_PYTHON
    const std::string cmd = std::string(PRACTREL_PYTHON) +
                            " -c \"import sys, xml.etree.ElementTree as E; E.parse(sys.argv[1])\" " + svg.string();
    CHECK(std::system(cmd.c_str()) == 0);
#endif
}

TEST_CASE("exit code matrix") {
    const auto dir = testing::scratch_dir("cli_exit");
    const auto no_loss = write(dir / "no_loss.json", R"({"spec_version": 1, "parameter_space": {"lo": -1, "hi": 1}})");
    const auto unknown = write(dir / "unknown.json", R"({"spec_version": 1, "colour": "blue"})");
    const auto syntax = write(dir / "syntax.json", "{\"spec_version\": 1,,}");
    const auto overlap = write(dir / "overlap.json", R"({"loss": {"kind": "builtin_coin_demo"},
        "hypotheses": {"h0": [[-0.2, 0.2]], "h1": [[0.1, 0.5]]}})");
    auto bad_proc = slurp(config("aspirin_scenario"));
    bad_proc.replace(bad_proc.find("\"tost\""), 6, "\"oracle\"");
    const auto unknown_proc = write(dir / "proc.json", bad_proc);
    const auto degenerate = write(dir / "degenerate.json", R"({"loss": {"kind": "builtin_coin_demo"},
        "hypotheses": {"h0": [0], "h1": [0.3], "restricted_space": true},
        "model": {"family": "binomial", "data": {"n": 10, "k": 5}},
        "decision": {"loss_ratio": 1}})");
    const auto uncovered = write(dir / "uncovered.json", R"({"loss": {"kind": "builtin_coin_demo"},
        "hypotheses": {"h0": [0], "h1": [0.3]},
        "model": {"family": "binomial", "data": {"n": 10, "k": 5}},
        "decision": {"loss_ratio": 1}})");

    struct Case {
        std::vector<std::string> args;
        int code;
        std::string message;
    };
    const std::vector<Case> cases = {
        {{"partition", "--config", config("coin_partition")}, 0, ""},
        {{"check-hypotheses", "--config", config("coin_partial_hypotheses")}, 0, ""},
        {{"decide", "--config", config("coin_decide_interval")}, 0, ""},
        {{"partition", "--config", no_loss}, 2, "loss"},
        {{"plot", "--config", no_loss}, 2, "loss"},
        {{"partition", "--config", unknown}, 2, "colour"},
        {{"partition", "--config", syntax}, 2, "line 1"},
        {{"partition", "--config", (dir / "missing.json").string()}, 2, "cannot read"},
        {{"check-hypotheses", "--config", overlap}, 2, "overlap"},
        {{"check-hypotheses", "--config", config("coin_partition")}, 2, "hypotheses"},
        {{"decide", "--config", config("coin_partition")}, 2, "model"},
        {{"decide", "--config", uncovered}, 2, "cover"},
        {{"compare", "--config", config("coin_decide")}, 2, "comparators"},
        {{"simulate", "--config", unknown_proc}, 2, "oracle"},
        {{"simulate", "--config", config("coin_partition")}, 2, "scenario"},
        {{"partition"}, 2, "config"},
        {{"--config", config("coin_partition")}, 2, "subcommand"},
        {{"explode", "--config", config("coin_partition")}, 2, ""},
        {{"partition", "--config", config("coin_partition"), "--format", "xml"}, 2, ""},
        {{"partition", "--config", config("coin_partition"), "--threads", "0"}, 2, ""},
        {{"decide", "--config", degenerate}, 3, "zero"},
        {{"plot", "--config", config("coin_partition"), "--output", "/nonexistent_dir/x.svg"}, 3, "cannot open"},
        {{"partition", "--config", config("coin_partition"), "--output", "/nonexistent_dir/x.csv"}, 3, ""},
    };
    for (const auto& c : cases) {
        const auto r = run(c.args);
        INFO(c.args[0], " ", c.args.size() > 2 ? c.args[2] : "", " -> ", r.err);
        CHECK(r.code == c.code);
        if (!c.message.empty()) CHECK(r.err.find(c.message) != std::string::npos);
    }
}
