#include "idde/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "idde/config.hpp"
#include "idde/io.hpp"

namespace idde {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotAdmissible = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitNoWitness = 4;

std::string derive_events_path(const std::string& out) {
    auto dot = out.rfind('.');
    if (dot == std::string::npos) return out + "_events.csv";
    return out.substr(0, dot) + "_events" + out.substr(dot);
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& config_path, std::string out_path,
                 std::string events_path) {
    ScenarioRun cfg = load_run_config_file(config_path);
    SimOptions opt;
    opt.warn_stream = &std::cerr;
    ScenarioResult result = run_scenario(cfg, opt);

    if (out_path.empty()) out_path = cfg.name + "_trajectory.csv";
    if (events_path.empty()) events_path = derive_events_path(out_path);

    {
        std::ofstream os(out_path);
        if (!os) throw ConfigError("cannot open output file \"" + out_path + "\"");
        write_trajectory_csv(os, result.analysis, cfg.pair ? &*cfg.pair : nullptr);
    }
    {
        std::ofstream os(events_path);
        if (!os) throw ConfigError("cannot open output file \"" + events_path + "\"");
        write_events_csv(os, result.analysis);
    }

    nlohmann::json summary;
    summary["scenario"] = cfg.name;
    summary["t_end"] = cfg.t_end;
    summary["steps"] = result.full.history.node_count();
    summary["events"] = result.full.events.size();
    summary["flow_evaluations"] = result.full.flow_evaluations;
    summary["final_norm"] = result.analysis.norm_at(result.analysis.history.now());
    summary["trajectory_csv"] = out_path;
    summary["events_csv"] = events_path;
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_certify(int theorem, double mu, double rho1, double rho2,
                std::optional<double> kappa, double r, double delta) {
    CertificateInputs in;
    in.mu = mu;
    in.rho1 = rho1;
    in.rho2 = rho2;
    in.kappa = kappa;
    in.r = r;

    CertificateReport rep;
    switch (theorem) {
    case 1: rep = thm1_certificate(in, delta); break;
    case 2: rep = thm2_certificate(in, delta); break;
    case 3: rep = thm3_certificate(in, delta); break;
    case 4: rep = thm4_check(in); break;
    default:
        std::cerr << "error: --theorem must be 1, 2, 3 or 4\n";
        return kExitConfig;
    }

    // a well-known constant set for which the composed threshold is often
    // misquoted as 2.06: state the directly evaluated value
    if (theorem == 1 && std::abs(rho1 - 2.0 * std::exp(1.0)) < 1e-3 &&
        std::abs(rho2 - 0.1875) < 1e-3 && std::abs(mu - 0.4) < 1e-3 &&
        std::abs(r - 1.0) < 1e-3) {
        rep.diagnostics.push_back(
            "note: ln(rho)/mu evaluates to " + format_number(rep.delta_star) +
            " for these constants; a dwell bound of 2.06 would need ln(rho) <= 0.824, "
            "but rho = " + format_number(rep.rho) + " gives ln(rho) = " +
            format_number(std::log(rep.rho)));
    }

    std::cout << certificate_to_json(rep).dump(2) << "\n";
    if (!rep.precondition_ok) return kExitConfig;
    return rep.admissible_at_query ? kExitOk : kExitNotAdmissible;
}

// ---------------------------------------------------------------------------

struct EnsembleMember {
    Trajectory analysis;
    double scale = 1.0;
    std::uint64_t schedule_seed = 0;
    bool zero_input = false;
};

std::vector<EnsembleMember> build_ensemble(const ScenarioRun& cfg, int size,
                                           std::uint64_t seed) {
    static const double kScales[] = {1.0, 0.5, 2.0, 0.25, 4.0};
    std::vector<EnsembleMember> members;
    for (int i = 0; i < size; ++i) {
        ImpulseSchedule sched = cfg.schedule;
        const std::uint64_t member_seed = seed + static_cast<std::uint64_t>(i);
        if (cfg.schedule.declared == ScheduleClass::SupDwell && cfg.schedule.delta > 0.0) {
            const double dmax = cfg.schedule.delta;
            const int count = static_cast<int>(std::ceil(cfg.t_end / (0.5 * dmax))) + 1;
            sched = gen_random_dwell(0.0, 0.5 * dmax, dmax, count, member_seed);
            sched.declared = ScheduleClass::SupDwell;
            sched.delta = dmax;
        } else if (cfg.schedule.declared == ScheduleClass::InfDwell && cfg.schedule.delta > 0.0) {
            const double dmin = cfg.schedule.delta;
            const int count = static_cast<int>(std::ceil(cfg.t_end / dmin)) + 1;
            sched = gen_random_dwell(0.0, dmin, 1.5 * dmin, count, member_seed);
            sched.declared = ScheduleClass::InfDwell;
            sched.delta = dmin;
        }
        auto valid = validate_schedule(sched, 0.0);
        if (!valid.ok) throw ConfigError("ensemble schedule invalid: " + valid.message);

        const double scale = kScales[static_cast<std::size_t>(i) % std::size(kScales)];
        History initial = cfg.initial.scaled(cfg.analysis_offset, cfg.analysis_dim, scale);

        auto run_one = [&](const InputSignal& w, bool zero) {
            Trajectory full = simulate(cfg.system, initial, w, sched, cfg.t_end, cfg.step);
            EnsembleMember m{(cfg.analysis_offset == 0 && cfg.analysis_dim == full.dimension())
                                 ? std::move(full)
                                 : full.project(cfg.analysis_offset, cfg.analysis_dim),
                             scale, member_seed, zero};
            members.push_back(std::move(m));
        };
        run_one(InputSignal::zero(cfg.system.input_dimension), true);
        if (!cfg.input.is_zero()) run_one(cfg.input, false);
    }
    return members;
}

int cmd_verify_iss(const std::string& config_path, int ensemble_size,
                   std::uint64_t seed, const std::string& out_path) {
    if (ensemble_size <= 0) {
        std::cerr << "error: --ensemble must be >= 1\n";
        return kExitConfig;
    }
    ScenarioRun cfg = load_run_config_file(config_path);
    std::vector<EnsembleMember> members = build_ensemble(cfg, ensemble_size, seed);

    std::vector<Trajectory> trajs;
    trajs.reserve(members.size());
    for (auto& m : members) trajs.push_back(m.analysis);

    EnvelopeFit fit = fit_envelope(trajs);

    nlohmann::json report;
    report["scenario"] = cfg.name;
    report["ensemble"] = ensemble_size;
    report["seed"] = seed;
    report["pass"] = fit.success;
    if (fit.success) report["envelope"] = envelope_to_json(fit.envelope);
    else report["failure"] = fit.failure_reason;
    auto& per_run = report["per_run"];
    per_run = nlohmann::json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
        nlohmann::json r;
        r["schedule_seed"] = members[i].schedule_seed;
        r["history_scale"] = members[i].scale;
        r["zero_input"] = members[i].zero_input;
        r["final_norm"] = members[i].analysis.norm_at(members[i].analysis.history.now());
        if (fit.success) r["pass"] = check_envelope(trajs[i], fit.envelope).pass;
        per_run.push_back(std::move(r));
    }

    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw ConfigError("cannot open output file \"" + out_path + "\"");
        os << report.dump(2) << "\n";
    }
    std::cout << report.dump(2) << "\n";
    return fit.success ? kExitOk : kExitNoWitness;
}

// ---------------------------------------------------------------------------

int cmd_sweep(const std::string& config_path, const std::string& param, double from,
              double to, int steps, const std::string& quantity,
              const std::string& out_path) {
    static const char* kParams[] = {"delta", "epsilon", "kappa", "rho1", "rho2", "mu"};
    bool known = false;
    for (const char* p : kParams) known = known || param == p;
    if (!known) {
        std::cerr << "error: unknown sweep parameter \"" << param << "\"\n";
        return kExitConfig;
    }
    if (steps < 1) {
        std::cerr << "error: --steps must be >= 1\n";
        return kExitConfig;
    }
    ScenarioRun cfg = load_run_config_file(config_path);

    // base certificate constants from the scenario
    CertificateInputs base;
    int theorem;
    double eps_base;
    if (cfg.name == "example1") {
        const Example1Params& p = *cfg.ex1;
        theorem = 1;
        base.mu = example1_mu(p);
        base.rho1 = 2.0 * std::exp(1.0);
        base.rho2 = 3.0 * p.tau / 16.0;
        base.r = p.tau;
        eps_base = p.eps;
    } else if (cfg.name == "example2") {
        const Example2Params& p = *cfg.ex2;
        theorem = 3;
        Example2Derivation der = example2_derive(p.A, p.C, p.L, p.r, p.d, p.eps, 1e-3,
                                                 1.001, 0, cfg.schedule.delta);
        base = der.certificate.inputs;
        eps_base = p.eps;
    } else {
        std::cerr << "error: sweep requires an example1 or example2 scenario config\n";
        return kExitConfig;
    }

    const double base_delta = cfg.schedule.delta > 0.0 ? cfg.schedule.delta : 0.0;

    std::ostringstream csv;
    csv << "value," << (quantity == "final_norm" ? "final_norm" : "margin") << "\n";
    for (int i = 0; i < steps; ++i) {
        const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);

        if (quantity == "final_norm") {
            if (param != "delta") {
                std::cerr << "error: final_norm sweeps support --param delta only\n";
                return kExitConfig;
            }
            ScenarioRun varied = cfg;
            const int count = static_cast<int>(std::floor(varied.t_end / v + 1e-9));
            varied.schedule = gen_periodic(0.0, v, count);
            varied.schedule.declared = cfg.schedule.declared;
            varied.schedule.delta = v;
            ScenarioResult res = run_scenario(varied);
            csv << format_number(v) << ','
                << format_number(res.analysis.norm_at(res.analysis.history.now())) << "\n";
            continue;
        }

        CertificateInputs in = base;
        double delta_q = base_delta;
        if (param == "delta") delta_q = v;
        else if (param == "kappa") in.kappa = v;
        else if (param == "rho1") in.rho1 = v;
        else if (param == "rho2") in.rho2 = v;
        else if (param == "mu") in.mu = v;
        else if (param == "epsilon") {
            if (cfg.name == "example1") {
                Example1Params p = *cfg.ex1;
                p.eps = v;
                in.mu = example1_mu(p);
            } else {
                Example2Params p = *cfg.ex2;
                p.eps = v;
                Example2Derivation der = example2_derive(p.A, p.C, p.L, p.r, p.d, p.eps,
                                                         1e-3, 1.001, 0, delta_q);
                in = der.certificate.inputs;
            }
            (void)eps_base;
        }

        CertificateReport rep;
        switch (theorem) {
        case 1: rep = thm1_certificate(in, delta_q); break;
        case 3: rep = thm3_certificate(in, delta_q); break;
        default: rep = thm4_check(in); break;
        }
        csv << format_number(v) << ',' << format_number(rep.margin) << "\n";
    }

    if (!out_path.empty()) {
        std::ofstream os(out_path);
        if (!os) throw ConfigError("cannot open output file \"" + out_path + "\"");
        os << csv.str();
    } else {
        std::cout << csv.str();
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"impulsive time-delay system simulation and dwell-time certification"};
    app.require_subcommand(1);

    std::string config_path, out_path, events_path;
    std::uint64_t seed = 1;

    auto* sim = app.add_subcommand("simulate", "integrate a configured scenario, write CSVs");
    sim->add_option("--config", config_path, "run configuration (JSON)")->required();
    sim->add_option("--out", out_path, "trajectory CSV path");
    sim->add_option("--events-out", events_path, "events CSV path");

    int theorem = 0;
    double mu = 0.0, rho1 = 0.0, rho2 = 0.0, r = 0.0, delta = 0.0;
    double kappa_value = 0.0;
    auto* cert = app.add_subcommand("certify", "closed-form dwell-time certificate");
    cert->add_option("--theorem", theorem, "criterion 1|2|3|4")->required();
    cert->add_option("--mu", mu, "flow rate")->required();
    cert->add_option("--rho1", rho1, "delay-independent jump factor")->required();
    cert->add_option("--rho2", rho2, "delay-dependent jump factor");
    auto* kappa_opt = cert->add_option("--kappa", kappa_value, "functional comparison gain");
    cert->add_option("--r", r, "delay bound");
    cert->add_option("--delta", delta, "queried dwell time");

    int ensemble = 0;
    auto* viss = app.add_subcommand("verify-iss", "fit and check a stability envelope");
    viss->add_option("--config", config_path, "run configuration (JSON)")->required();
    viss->add_option("--ensemble", ensemble, "number of schedule draws")->required();
    viss->add_option("--seed", seed, "schedule seed");
    viss->add_option("--out", out_path, "JSON report path (also printed)");

    std::string param, quantity = "margin";
    double from = 0.0, to = 0.0;
    int steps = 1;
    auto* swp = app.add_subcommand("sweep", "certificate margin or final norm over a grid");
    swp->add_option("--config", config_path, "run configuration (JSON)")->required();
    swp->add_option("--param", param, "delta|epsilon|kappa|rho1|rho2|mu")->required();
    swp->add_option("--from", from, "range start")->required();
    swp->add_option("--to", to, "range end")->required();
    swp->add_option("--steps", steps, "grid points")->required();
    swp->add_option("--quantity", quantity, "margin (default) or final_norm");
    swp->add_option("--out", out_path, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_path, events_path);
        if (cert->parsed()) {
            std::optional<double> kappa;
            if (kappa_opt->count() > 0) kappa = kappa_value;
            return cmd_certify(theorem, mu, rho1, rho2, kappa, r, delta);
        }
        if (viss->parsed()) return cmd_verify_iss(config_path, ensemble, seed, out_path);
        if (swp->parsed()) return cmd_sweep(config_path, param, from, to, steps, quantity, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    }
    return kExitConfig;
}

} // namespace idde
