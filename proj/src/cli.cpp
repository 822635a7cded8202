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

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigaxial/curve.hpp"
#include "sigaxial/errors.hpp"
#include "sigaxial/experiments.hpp"
#include "sigaxial/signature.hpp"

namespace sigaxial {

namespace {

struct Flags {
    std::optional<std::string> preset;
    std::optional<std::string> preset_b;
    std::optional<std::string> table;
    std::optional<std::string> polyline;
    std::optional<std::string> out;
    std::optional<std::string> plot;
    std::optional<std::string> config;
    std::optional<int> truncation;
    std::optional<long> nmax;
    std::optional<double> x;
    std::optional<int> j;
    std::optional<std::string> scheme;
    std::optional<double> eps0;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::optional<std::string> norm;
    std::vector<int> m_list;
    std::vector<long> n_list;
    std::optional<int> grid;
    std::optional<double> slack;
    std::optional<int> vertices;
    std::optional<int> levels;
    std::optional<double> tolerance;
    bool raw = false;

    // preset parameters
    std::optional<double> m;
    std::optional<double> x0;
    std::optional<double> slope;
    std::optional<double> freq;
    std::optional<double> amp;
    std::optional<double> c0;
    std::optional<double> scale;
    std::vector<std::string> params;
};

void add_flags(CLI::App& cmd, Flags& f) {
    cmd.add_option("--preset", f.preset, "analytic curve preset");
    cmd.add_option("--preset-b", f.preset_b, "second preset (norms)");
    cmd.add_option("--table", f.table, "coefficient table (JSON)");
    cmd.add_option("--polyline", f.polyline, "polyline CSV with header s,x1,...,xd");
    cmd.add_option("--out", f.out, "output file (stdout when absent)");
    cmd.add_option("--plot", f.plot, "SVG output file");
    cmd.add_option("--config", f.config, "JSON run manifest; flags override it");
    cmd.add_option("--N", f.truncation, "table truncation level");
    cmd.add_option("--nmax", f.nmax, "largest denominator / level");
    cmd.add_option("--x", f.x, "evaluation point in [0,1]");
    cmd.add_option("--j", f.j, "non-axial component (1-based)");
    cmd.add_option("--scheme", f.scheme, "naive|decimal|cf");
    cmd.add_option("--eps0", f.eps0, "exponent margin in (0, 1/2)");
    cmd.add_option("--alpha", f.alpha, "Hoelder exponent");
    cmd.add_option("--seed", f.seed, "seed for randomized sweeps");
    cmd.add_option("--n", f.n, "profile / length level");
    cmd.add_option("--norm", f.norm, "as|al1");
    cmd.add_option("--m-list", f.m_list, "helix frequencies")->delimiter(',');
    cmd.add_option("--n-list", f.n_list, "kernel levels")->delimiter(',');
    cmd.add_option("--grid", f.grid, "grid points");
    cmd.add_option("--slack", f.slack, "slope slack");
    cmd.add_option("--vertices", f.vertices, "polyline vertices");
    cmd.add_option("--levels", f.levels, "signature levels");
    cmd.add_option("--tolerance", f.tolerance, "cross-check tolerance");
    cmd.add_flag("--raw", f.raw, "write raw (sign, log) cells");
    cmd.add_option("--m", f.m, "monomial exponent");
    cmd.add_option("--x0", f.x0, "kink location");
    cmd.add_option("--slope", f.slope, "linear slope");
    cmd.add_option("--freq", f.freq, "sine frequency");
    cmd.add_option("--amp", f.amp, "sine amplitude");
    cmd.add_option("--c0", f.c0, "axial speed");
    cmd.add_option("--scale", f.scale, "scale of the non-axial components");
    cmd.add_option("--param", f.params, "extra preset parameter key=value (JSON value)");
}

nlohmann::json preset_spec(const std::string& name, const Flags& f) {
    nlohmann::json spec = {{"preset", name}};
    auto put = [&](const char* key, const std::optional<double>& value) {
        if (value && preset_accepts(name, key)) {
            spec[key] = *value;
        }
    };
    put("m", f.m);
    put("x0", f.x0);
    put("slope", f.slope);
    put("freq", f.freq);
    put("amp", f.amp);
    put("c0", f.c0);
    put("scale", f.scale);
    put("alpha", f.alpha);
    for (const auto& item : f.params) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("--param expects key=value, got '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        try {
            spec[key] = nlohmann::json::parse(item.substr(eq + 1));
        } catch (const nlohmann::json::parse_error&) {
            throw ConfigError("--param value for '" + key + "' is not a number or JSON value");
        }
    }
    return spec;
}

ExperimentConfig build_config(const std::string& command, const Flags& f) {
    ExperimentConfig cfg;
    if (f.config) {
        std::ifstream in(*f.config);
        if (!in) {
            throw ConfigError("cannot read config file '" + *f.config + "'");
        }
        nlohmann::json manifest;
        try {
            manifest = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("malformed config file '" + *f.config + "': " + e.what());
        }
        apply_config_json(cfg, manifest);
        if (!cfg.command.empty() && cfg.command != command) {
            throw ConfigError("config file is for command '" + cfg.command + "', not '" + command + "'");
        }
    }
    cfg.command = command;

    if (f.preset) {
        cfg.curve = preset_spec(*f.preset, f);
    } else if (cfg.curve.is_object() && cfg.curve.contains("preset") && cfg.curve.at("preset").is_string()) {
        // flags still override individual parameters of a manifest curve
        const nlohmann::json extra = preset_spec(cfg.curve.at("preset").get<std::string>(), f);
        for (const auto& [key, value] : extra.items()) {
            cfg.curve[key] = value;
        }
    }
    if (f.preset_b) {
        cfg.curve_b = preset_spec(*f.preset_b, f);
    }
    if (f.table) cfg.table_path = *f.table;
    if (f.polyline) cfg.polyline_path = *f.polyline;
    if (f.out) cfg.out_path = *f.out;
    if (f.plot) cfg.plot_path = *f.plot;
    if (f.truncation) cfg.truncation = *f.truncation;
    if (f.nmax) cfg.nmax = *f.nmax;
    if (f.x) cfg.x = *f.x;
    if (f.j) cfg.j = *f.j;
    if (f.scheme) cfg.scheme = *f.scheme;
    if (f.eps0) cfg.eps0 = *f.eps0;
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.seed) cfg.seed = *f.seed;
    if (f.n) cfg.n = *f.n;
    if (f.norm) cfg.norm = *f.norm;
    if (!f.m_list.empty()) cfg.m_list = f.m_list;
    if (!f.n_list.empty()) cfg.n_list = f.n_list;
    if (f.grid) cfg.grid = *f.grid;
    if (f.slack) cfg.slack = *f.slack;
    if (f.vertices) cfg.vertices = *f.vertices;
    if (f.levels) cfg.levels = *f.levels;
    if (f.tolerance) cfg.tolerance = *f.tolerance;
    if (f.raw) cfg.raw = true;
    return cfg;
}

bool ends_with(const std::string& text, const std::string& suffix) {
    return text.size() >= suffix.size() &&
           text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class Writer>
void write_output(const std::string& path, const Writer& writer) {
    if (path.empty()) {
        writer(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    writer(out);
    if (!out) {
        throw ConfigError("failed while writing '" + path + "'");
    }
}

void run_table(const ExperimentConfig& cfg) {
    if (cfg.plot_path.size() > 0) {
        throw ConfigError("table does not produce a plot");
    }
    Curve curve = [&] {
        if (!cfg.polyline_path.empty()) {
            std::ifstream in(cfg.polyline_path);
            if (!in) {
                throw ConfigError("cannot read polyline file '" + cfg.polyline_path + "'");
            }
            return reparameterize_to_axial_linear(read_polyline_csv(in), 1);
        }
        if (!cfg.curve.is_object() || cfg.curve.empty()) {
            throw ConfigError("table needs --preset, --polyline or a curve in the config");
        }
        return curve_from_json(cfg.curve);
    }();
    const int truncation = cfg.truncation.value_or(64);
    if (truncation < 0 || truncation > 4096) {
        throw ConfigError("--N must lie in 0..4096");
    }
    const CoeffTable table = build_table(curve, truncation, cfg.quad);
    const bool csv = ends_with(cfg.out_path, ".csv");
    write_output(cfg.out_path, [&](std::ostream& out) {
        if (csv) {
            emit_table_csv(out, table, cfg.raw);
        } else {
            emit_table(out, table, cfg.raw);
        }
    });
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Axial-path signature inversion toolkit"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"table", "build a scaled coefficient table"},
        {"invert", "recover x_j'(x) from a table"},
        {"trace", "reconstruct the curve trace from a table"},
        {"length", "recover the length sequence"},
        {"rate", "convergence-rate study at one point"},
        {"norms", "asymptotic seminorms against C1 / BV distances"},
        {"discont", "helix discontinuity demonstration"},
        {"modcont", "modulus-of-continuity experiment"},
        {"fastdecay", "kernel decay sweep"},
        {"crosscheck", "quadrature table against Chen's identity"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_flags(*sub, flags);
        subs.push_back(sub);
    }

    if (argc > 1 && argv[1][0] != '-') {
        const std::string first = argv[1];
        const bool known = std::any_of(commands.begin(), commands.end(),
                                       [&](const auto& c) { return c.first == first; });
        if (!known) {
            std::cerr << "sig: unknown command '" << first << "'\n";
            return 1;
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "sig: " << e.what() << '\n';
        return 1;
    }

    std::string command;
    for (CLI::App* sub : subs) {
        if (sub->parsed()) {
            command = sub->get_name();
        }
    }

    try {
        const ExperimentConfig cfg = build_config(command, flags);
        const auto start = std::chrono::steady_clock::now();
        if (command == "table") {
            run_table(cfg);
        } else {
            const ExperimentReport report = run_experiment(cfg);
            std::string svg;
            if (!cfg.plot_path.empty()) {
                svg = emit_svg_plot(report, report.plot_kind);
            }
            write_output(cfg.out_path, [&](std::ostream& out) { write_csv(out, report); });
            if (!cfg.plot_path.empty()) {
                write_output(cfg.plot_path, [&](std::ostream& out) { out << svg; });
            }
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cerr << "sig " << command << ": wall time " << seconds << " s\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "sig " << command << ": configuration error: " << e.what() << '\n';
        return 1;
    } catch (const QuadratureError& e) {
        std::cerr << "sig " << command << ": numerical failure: " << e.what() << " (last two values "
                  << e.previous() << ", " << e.last() << ")\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "sig " << command << ": numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "sig " << command << ": " << e.what() << '\n';
        return 2;
    }
}

}  // namespace sigaxial
