// muskat <command> --config <path> [--out <dir>] [--threads N]
//
// Commands: simulate, certify, parabola-check, cauchy, norms.
// Config is JSON; outputs are CSV (time series, grid functions) and JSON
// (reports, summary).  Exit 0 on success, 2 on blow-up, 1 on error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "muskat/certify.hpp"
#include "muskat/parallel.hpp"

using nlohmann::json;

namespace {

struct RunConfig {
    std::string command;
    double L = 10.0;
    int n = 2001;
    double A = 40.0;
    int tail_nodes = 256;
    double cfl = 0.25;
    double dt = 0.0;  // 0 = use cfl
    double t_end = 0.5;
    double epsilon = 0.0;
    int output_every = 10;
    // initial data: one or more bumps a*exp(-1/(1-((x-c)/w)^2))
    std::vector<double> amplitudes{0.1};
    std::vector<double> widths{1.0};
    std::vector<double> centers{0.0};
    std::vector<std::string> lemma_ids;
    std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
    std::vector<double> cauchy_epsilons{0.2, 0.1, 0.05};
    std::string out_dir = ".";
};

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::runtime_error("config: unknown key '" + where + it.key() + "'");
}

std::vector<double> number_list(const json& v, const std::string& field) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
        return out;
    }
    if (!v.is_array()) throw std::runtime_error("config: " + field + " must be number or array");
    for (const auto& e : v) out.push_back(e.get<double>());
    return out;
}

RunConfig parse_config(const json& doc, const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    reject_unknown(doc, {"command", "grid", "quad", "sim", "initial", "cert", "cauchy", "out_dir"},
                   "");
    if (doc.contains("command")) {
        const std::string c = doc["command"].get<std::string>();
        if (!command.empty() && c != command)
            throw std::runtime_error("config: command mismatch with CLI ('" + c + "')");
        cfg.command = c;
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        reject_unknown(g, {"L", "n"}, "grid.");
        if (g.contains("L")) cfg.L = g["L"].get<double>();
        if (g.contains("n")) cfg.n = g["n"].get<int>();
    }
    if (doc.contains("quad")) {
        const json& q = doc["quad"];
        reject_unknown(q, {"A", "tail_nodes"}, "quad.");
        if (q.contains("A")) cfg.A = q["A"].get<double>();
        if (q.contains("tail_nodes")) cfg.tail_nodes = q["tail_nodes"].get<int>();
    }
    if (doc.contains("sim")) {
        const json& s = doc["sim"];
        reject_unknown(s, {"cfl", "dt", "t_end", "epsilon", "output_every"}, "sim.");
        if (s.contains("cfl")) cfg.cfl = s["cfl"].get<double>();
        if (s.contains("dt")) cfg.dt = s["dt"].get<double>();
        if (s.contains("t_end")) cfg.t_end = s["t_end"].get<double>();
        if (s.contains("epsilon")) cfg.epsilon = s["epsilon"].get<double>();
        if (s.contains("output_every")) cfg.output_every = s["output_every"].get<int>();
    }
    if (doc.contains("initial")) {
        const json& ini = doc["initial"];
        reject_unknown(ini, {"kind", "amplitude", "width", "center"}, "initial.");
        const std::string kind = ini.value("kind", "bump");
        if (kind != "bump" && kind != "sum-of-bumps")
            throw std::runtime_error("config: initial.kind must be bump or sum-of-bumps");
        if (ini.contains("amplitude")) cfg.amplitudes = number_list(ini["amplitude"], "initial.amplitude");
        if (ini.contains("width")) cfg.widths = number_list(ini["width"], "initial.width");
        if (ini.contains("center")) cfg.centers = number_list(ini["center"], "initial.center");
        if (cfg.amplitudes.size() != cfg.widths.size() ||
            cfg.amplitudes.size() != cfg.centers.size())
            throw std::runtime_error("config: initial amplitude/width/center lengths differ");
    }
    if (doc.contains("cert")) {
        const json& c = doc["cert"];
        reject_unknown(c, {"lemma_ids", "lambdas"}, "cert.");
        if (c.contains("lemma_ids"))
            for (const auto& e : c["lemma_ids"]) cfg.lemma_ids.push_back(e.get<std::string>());
        if (c.contains("lambdas")) cfg.lambdas = number_list(c["lambdas"], "cert.lambdas");
    }
    if (doc.contains("cauchy")) {
        const json& c = doc["cauchy"];
        reject_unknown(c, {"epsilons"}, "cauchy.");
        if (c.contains("epsilons")) cfg.cauchy_epsilons = number_list(c["epsilons"], "cauchy.epsilons");
    }
    if (doc.contains("out_dir")) cfg.out_dir = doc["out_dir"].get<std::string>();

    // Validate against module preconditions, naming the offending field.
    if (cfg.n < 9 || cfg.n % 2 == 0) throw std::runtime_error("config: grid.n must be odd and >= 9");
    if (!(cfg.L > 0.0)) throw std::runtime_error("config: grid.L must be positive");
    const double dx = 2.0 * cfg.L / (cfg.n - 1);
    if (cfg.epsilon != 0.0 && cfg.epsilon < 2.0 * dx)
        throw std::runtime_error("config: sim.epsilon must be >= 2*dx (or 0)");
    if (cfg.tail_nodes < 16) throw std::runtime_error("config: quad.tail_nodes must be >= 16");
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0))
        throw std::runtime_error("config: sim.cfl must be in (0,1]");
    if (cfg.output_every < 1) throw std::runtime_error("config: sim.output_every must be >= 1");
    return cfg;
}

muskat::GridFunction initial_data(const RunConfig& cfg, const muskat::GridSpec& spec) {
    return muskat::sample(spec, [&](double x) {
        double v = 0.0;
        for (std::size_t k = 0; k < cfg.amplitudes.size(); ++k)
            v += muskat::bump(x, cfg.amplitudes[k], cfg.widths[k], cfg.centers[k]);
        return v;
    });
}

void write_summary(const json& summary, const std::string& out_dir) {
    const std::string path = out_dir + "/summary.json";
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << summary.dump(2) << "\n";
    std::cout << path << "\n";
}

int run(const RunConfig& cfg) {
    using namespace muskat;
    std::filesystem::create_directories(cfg.out_dir);
    const GridSpec spec = make_grid(cfg.L, cfg.n);
    const QuadratureScheme quad = make_scheme(spec, cfg.A, cfg.tail_nodes);
    json summary;
    summary["command"] = cfg.command;

    if (cfg.command == "simulate") {
        SimConfig sim;
        sim.grid = spec;
        sim.quad = quad;
        sim.dt = cfg.dt;
        sim.cfl = cfg.cfl;
        sim.t_end = cfg.t_end;
        sim.epsilon = cfg.epsilon;
        sim.output_every = cfg.output_every;
        sim.keep_snapshots = true;
        const Trajectory traj = simulate(initial_data(cfg, spec), sim);
        write_trajectory_csv(traj, cfg.out_dir + "/trajectory.csv");
        char name[64];
        for (const auto& [t, g] : traj.snapshots) {
            std::snprintf(name, sizeof name, "/g_t%.6f.csv", t);
            write_csv_file(g, cfg.out_dir + name);
        }
        summary["blow_up"] = traj.blew_up;
        summary["final_t"] = traj.times.back();
        summary["final_h3"] = traj.reports.back().h3;
        summary["final_energy"] = traj.reports.back().energy;
        write_summary(summary, cfg.out_dir);
        return traj.blew_up ? 2 : 0;
    }
    if (cfg.command == "certify") {
        const std::vector<std::string>& ids =
            cfg.lemma_ids.empty() ? lemma_ids() : cfg.lemma_ids;
        const GridFunction base = initial_data(cfg, spec);
        bool all_pass = true;
        json per;
        for (const std::string& id : ids) {
            std::cerr << "certifying " << id << "\n";
            const CertReport rep = certify_scaling(id, base, cfg.lambdas, quad);
            write_cert_report(rep, cfg.out_dir);
            per[id] = rep.pass;
            all_pass = all_pass && rep.pass;
        }
        summary["pass"] = per;
        summary["all_pass"] = all_pass;
        write_summary(summary, cfg.out_dir);
        return 0;
    }
    if (cfg.command == "parabola-check") {
        std::vector<double> xs;
        for (int k = -5; k <= 5; ++k) xs.push_back(k);
        summary["max_residual"] = parabola_residual(xs, quad);
        write_summary(summary, cfg.out_dir);
        return 0;
    }
    if (cfg.command == "cauchy") {
        SimConfig sim;
        sim.grid = spec;
        sim.quad = quad;
        sim.cfl = cfg.cfl;
        sim.dt = cfg.dt;
        sim.output_every = cfg.output_every;
        const CauchyReport rep =
            cauchy_rate(initial_data(cfg, spec), cfg.cauchy_epsilons, cfg.t_end, sim);
        summary["eps_sums"] = rep.eps_sums;
        summary["gaps"] = rep.gaps;
        summary["fitted_rate"] = rep.fitted_rate;
        write_summary(summary, cfg.out_dir);
        return 0;
    }
    if (cfg.command == "norms") {
        const EnergyReport r = norms(initial_data(cfg, spec));
        summary["l2"] = r.l2;
        summary["d3_l2"] = r.d3_l2;
        summary["energy"] = r.energy;
        summary["c_norms"] = {r.c_norms[0], r.c_norms[1], r.c_norms[2], r.c_norms[3]};
        summary["holder_2_half"] = r.holder_2_half;
        summary["h3"] = r.h3;
        write_summary(summary, cfg.out_dir);
        return 0;
    }
    throw std::runtime_error("unknown command: " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic-interface Muskat simulator and certification toolkit"};
    std::string command, config_path, out_dir;
    int threads = 0;
    app.add_option("command", command, "simulate|certify|parabola-check|cauchy|norms")
        ->required();
    app.add_option("--config", config_path, "JSON config path")->required();
    app.add_option("--out", out_dir, "output directory (overrides config out_dir)");
    app.add_option("--threads", threads, "worker thread count");
    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0) muskat::set_threads(threads);
        std::ifstream is(config_path);
        if (!is) throw std::runtime_error("cannot open config: " + config_path);
        json doc;
        try {
            doc = json::parse(is);
        } catch (const json::parse_error& e) {
            throw std::runtime_error(std::string("config parse error: ") + e.what());
        }
        RunConfig cfg = parse_config(doc, command);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return run(cfg);
    } catch (const muskat::BlowUpError& b) {
        std::cerr << "blow-up at t = " << b.time << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
