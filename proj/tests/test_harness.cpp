/* Copyright 2026 The sigaxial Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "sigaxial/errors.hpp"
#include "sigaxial/experiments.hpp"
#include "sigaxial/stats.hpp"

using namespace sigaxial;

namespace {

std::string csv_of(const ExperimentReport& report) {
    std::ostringstream out;
    write_csv(out, report);
    return out.str();
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int cli(std::vector<std::string> args) {
    args.insert(args.begin(), "sig");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sigaxial_harness_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(-12.0) == "-12");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV layout") {
    ExperimentReport r;
    r.config_echo = {{"command", "demo"}};
    r.columns = {"a", "b"};
    r.rows = {{1, 0.5}, {2, 0.25}};
    r.summary = {{"total", 0.75}};
    CHECK(csv_of(r) == "# command=demo\n# summary.total=0.75\na,b\n1,0.5\n2,0.25\n");
    CHECK(r.summary_value("total") == 0.75);
    CHECK_FALSE(r.summary_value("missing"));
    CHECK(r.column("b") == std::vector<double>{0.5, 0.25});
    CHECK_THROWS_AS(r.column("c"), ConfigError);
}

TEST_CASE("SVG emission") {
    ExperimentReport r;
    r.title = "t <&>";
    r.columns = {"q", "err"};
    r.rows = {{1, 1.0}, {10, 0.1}, {100, 0.01}};
    const std::string a = emit_svg_plot(r, PlotKind::loglog);
    CHECK(a == emit_svg_plot(r, PlotKind::loglog));
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("t &lt;&amp;&gt;") != std::string::npos);
    ExperimentReport empty;
    CHECK_THROWS_AS(emit_svg_plot(empty, PlotKind::profile), ConfigError);
}

TEST_CASE("seeded draws are reproducible") {
    const auto a = log_uniform_draws(42, 20, 1e-9, 1.0);
    CHECK(a == log_uniform_draws(42, 20, 1e-9, 1.0));
    CHECK(a != log_uniform_draws(43, 20, 1e-9, 1.0));
    for (double v : a) {
        CHECK(v >= 1e-9);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("config manifests") {
    ExperimentConfig cfg;
    apply_config_json(cfg, nlohmann::json::parse(
                               R"({"command":"rate","curve":{"preset":"holder_kink","alpha":0.5},
                                   "nmax":128,"eps0":0.2,"quad":{"points":24}})"));
    CHECK(cfg.command == "rate");
    CHECK(cfg.nmax == 128);
    CHECK(cfg.eps0 == 0.2);
    CHECK(cfg.quad.points == 24);
    CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"nmx":3})")), ConfigError);
    CHECK_THROWS_AS(apply_config_json(cfg, nlohmann::json::parse(R"({"nmax":"many"})")), ConfigError);
    CHECK(preset_accepts("holder_kink", "alpha"));
    CHECK_FALSE(preset_accepts("sine", "alpha"));
    CHECK(preset_accepts("sine", "c0"));
}

TEST_CASE("rate experiment") {
    ExperimentConfig cfg;
    cfg.command = "rate";
    cfg.curve = {{"preset", "holder_kink"}, {"alpha", 0.5}, {"x0", 0.5}};
    cfg.nmax = 256;
    const ExperimentReport r = run_experiment(cfg);
    CHECK(r.rows.size() == 256);
    // the summary is recomputable from the rows
    const auto q = r.column("q");
    const auto err = r.column("error");
    const double tail = *r.summary_value("tail_start");
    CHECK(tail == doctest::Approx(1 + 0.5 * 255));
    const LineFit fit = fit_loglog_tail(q, err, tail);
    CHECK(*r.summary_value("slope") == doctest::Approx(fit.slope));
    CHECK(*r.summary_value("slope") <= *r.summary_value("bound"));
    CHECK(*r.summary_value("pass") == 1.0);
    CHECK(r.series.size() == 3);

    ExperimentConfig flat = cfg;
    flat.curve = {{"preset", "linear"}};
    flat.x = 0.3;
    const ExperimentReport d = run_experiment(flat);
    CHECK(*d.summary_value("degenerate") == 1.0);
    CHECK(std::isnan(*d.summary_value("slope")));

    ExperimentConfig no_holder = cfg;
    no_holder.curve = nlohmann::json();
    CHECK_THROWS_AS(run_experiment(no_holder), ConfigError);

    ExperimentConfig bad_eps = cfg;
    bad_eps.eps0 = 0.5;
    CHECK_THROWS_AS(run_experiment(bad_eps), ConfigError);
}

TEST_CASE("experiments are deterministic") {
    std::vector<ExperimentConfig> configs;
    auto add = [&](const std::string& command, nlohmann::json curve = nlohmann::json()) {
        ExperimentConfig cfg;
        cfg.command = command;
        cfg.curve = std::move(curve);
        configs.push_back(cfg);
        return &configs.back();
    };
    add("invert", {{"preset", "monomial"}})->x = 0.3;
    add("trace", {{"preset", "sine"}})->n = 32;
    add("length", {{"preset", "helix"}, {"n", 2}})->n = 32;
    add("norms", {{"preset", "sine"}})->truncation = 32;
    add("discont")->truncation = 5;
    add("modcont")->lambda_count = 5;
    add("fastdecay")->n_list = {200, 400};
    add("crosscheck")->vertices = 500;
    configs.back().levels = 5;
    configs[5].vertices = 301;
    configs[6].grid = 501;
    for (const auto& cfg : configs) {
        CAPTURE(cfg.command);
        const ExperimentReport a = run_experiment(cfg);
        const ExperimentReport b = run_experiment(cfg);
        CHECK(csv_of(a) == csv_of(b));
        CHECK(emit_svg_plot(a, a.plot_kind) == emit_svg_plot(b, b.plot_kind));
        CHECK_FALSE(a.rows.empty());
        for (const auto& row : a.rows) CHECK(row.size() == a.columns.size());
    }
}

TEST_CASE("command line") {
    TempDir dir;
    const std::string table = dir.file("t.json");
    CHECK(cli({"table", "--preset", "monomial", "--m", "1", "--N", "64", "--out", table}) == 0);
    const auto parsed = nlohmann::json::parse(slurp(table));
    CHECK(parsed.at("N") == 64);
    CHECK(parsed.at("cells").size() == 65u * 66u / 2u);

    const std::string inv = dir.file("inv.csv");
    CHECK(cli({"invert", "--table", table, "--x", "0.5", "--scheme", "cf", "--nmax", "64", "--out", inv}) == 0);
    const std::string text = slurp(inv);
    CHECK(text.rfind("# command=invert", 0) == 0);
    CHECK(text.find("n,p,q,estimate\n") != std::string::npos);
    const auto pos = text.find("summary.final_estimate=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(text.substr(pos + 23)) == doctest::Approx(0.5).epsilon(1e-10));

    const std::string csv_table = dir.file("t.csv");
    CHECK(cli({"table", "--preset", "sine", "--N", "4", "--raw", "--out", csv_table}) == 0);
    CHECK(slurp(csv_table).find("j,k,l,sign,loga\n") != std::string::npos);

    const std::string svg1 = dir.file("a.svg");
    const std::string svg2 = dir.file("b.svg");
    const std::string out1 = dir.file("a.csv");
    const std::string out2 = dir.file("b.csv");
    CHECK(cli({"rate", "--preset", "holder_kink", "--alpha", "0.5", "--x0", "0.5", "--nmax", "128",
               "--out", out1, "--plot", svg1}) == 0);
    CHECK(cli({"rate", "--preset", "holder_kink", "--alpha", "0.5", "--x0", "0.5", "--nmax", "128",
               "--out", out2, "--plot", svg2}) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(svg1) == slurp(svg2));

    const std::string manifest = dir.file("run.json");
    std::ofstream(manifest) << R"({"curve":{"preset":"holder_kink","alpha":0.5,"x0":0.5},"nmax":64})";
    const std::string from_manifest = dir.file("m.csv");
    CHECK(cli({"rate", "--config", manifest, "--nmax", "32", "--out", from_manifest}) == 0);
    CHECK(slurp(from_manifest).find("# nmax=32\n") != std::string::npos);

    SUBCASE("exit codes") {
        CHECK(cli({"frobnicate"}) == 1);
        CHECK(cli({}) == 1);
        CHECK(cli({"invert", "--table", dir.file("missing.json"), "--x", "0.5"}) == 1);
        CHECK(cli({"rate", "--preset", "holder_kink", "--alpha", "0.5", "--eps0", "0.7"}) == 1);
        CHECK(cli({"table", "--preset", "nosuch"}) == 1);
        CHECK(cli({"invert", "--table", table, "--x", "0.5", "--scheme", "farey"}) == 1);
        CHECK(cli({"table", "--preset", "monomial", "--N", "ten"}) == 1);
        std::ofstream(dir.file("broken.json")) << "{";
        CHECK(cli({"rate", "--config", dir.file("broken.json")}) == 1);
        // an unreachable quadrature tolerance is a numerical failure
        std::ofstream(dir.file("strict.json"))
            << R"({"quad":{"tolerance":1e-300,"max_refinements":1,"points":3}})";
        CHECK(cli({"table", "--preset", "holder_kink", "--alpha", "0.5", "--N", "3", "--config",
                   dir.file("strict.json"), "--out", dir.file("x.json")}) == 2);
    }
}
