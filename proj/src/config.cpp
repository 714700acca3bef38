#include "idde/config.hpp"

#include <cmath>
#include <fstream>

namespace idde {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
    }
}

double require_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError("config: missing \"" + std::string(key) + "\" in " + where);
    if (!j[key].is_number())
        throw ConfigError("config: \"" + std::string(key) + "\" in " + where + " must be a number");
    return j[key].get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError("config: \"" + std::string(key) + "\" must be a number");
    return j[key].get<double>();
}

Vec require_vector(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_array())
        throw ConfigError("config: \"" + std::string(key) + "\" in " + where + " must be an array");
    Vec v;
    for (const auto& e : j[key]) {
        if (!e.is_number()) throw ConfigError("config: non-numeric entry in " + where);
        v.push_back(e.get<double>());
    }
    return v;
}

Matrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw ConfigError("config: " + where + " must be a nested array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.front().size());
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != cols)
            throw ConfigError("config: ragged rows in " + where);
        for (int k = 0; k < cols; ++k)
            m(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    }
    return m;
}

InputSignal parse_input(const json& j, const std::string& scenario) {
    reject_unknown(j, {"kind", "name", "amplitude", "rate", "origin", "omega", "phase",
                       "times", "values", "dimension"},
                   "input");
    const std::string kind = j.value("kind", "zero");
    if (kind == "zero") {
        return InputSignal::zero(static_cast<int>(number_or(j, "dimension", 1)));
    }
    if (kind == "exp_decay") {
        return InputSignal::exp_decay(require_number(j, "amplitude", "input"),
                                      require_number(j, "rate", "input"),
                                      number_or(j, "origin", 0.0));
    }
    if (kind == "sinusoid") {
        return InputSignal::sinusoid(require_number(j, "amplitude", "input"),
                                     require_number(j, "omega", "input"),
                                     number_or(j, "phase", 0.0));
    }
    if (kind == "piecewise_constant") {
        Vec times = require_vector(j, "times", "input");
        if (!j.contains("values") || !j["values"].is_array())
            throw ConfigError("config: piecewise_constant input needs \"values\"");
        std::vector<Vec> values;
        for (const auto& row : j["values"]) {
            Vec v;
            if (row.is_number()) {
                v.push_back(row.get<double>());
            } else if (row.is_array()) {
                for (const auto& e : row) v.push_back(e.get<double>());
            } else {
                throw ConfigError("config: bad piecewise_constant value row");
            }
            values.push_back(std::move(v));
        }
        return InputSignal::piecewise_constant(std::move(times), std::move(values));
    }
    if (kind == "builtin") {
        const std::string name = j.value("name", "");
        if (scenario == "example1") {
            if (name == "decay") return example1_input_decay();
            if (name == "periodic") return example1_input_periodic();
        } else if (scenario == "example2") {
            if (name == "decay") return example2_input_decay();
            if (name == "periodic") return example2_input_periodic();
        }
        throw ConfigError("config: unknown builtin input \"" + name + "\" for scenario \"" +
                          scenario + "\"");
    }
    throw ConfigError("config: unknown input kind \"" + kind + "\"");
}

ImpulseSchedule parse_schedule(const json& j, double t0, double t_end) {
    reject_unknown(j, {"kind", "delta", "count", "class", "delta_min", "delta_max",
                       "seed", "times"},
                   "schedule");
    const std::string kind = j.value("kind", "explicit");
    auto parse_class = [&](ImpulseSchedule& s, ScheduleClass fallback, double fallback_delta) {
        const std::string cls = j.value("class", "");
        if (cls.empty()) {
            s.declared = fallback;
            s.delta = fallback_delta;
        } else if (cls == "inf_dwell") {
            s.declared = ScheduleClass::InfDwell;
            s.delta = number_or(j, "delta", fallback_delta);
        } else if (cls == "sup_dwell") {
            s.declared = ScheduleClass::SupDwell;
            s.delta = number_or(j, "delta", fallback_delta);
        } else if (cls == "all") {
            s.declared = ScheduleClass::All;
        } else {
            throw ConfigError("config: unknown schedule class \"" + cls + "\"");
        }
    };

    if (kind == "periodic") {
        const double delta = require_number(j, "delta", "schedule");
        if (delta <= 0.0) throw ConfigError("config: schedule delta must be > 0");
        int count;
        if (j.contains("count")) {
            count = j["count"].get<int>();
        } else {
            count = static_cast<int>(std::floor((t_end - t0) / delta + 1e-9));
        }
        ImpulseSchedule s = gen_periodic(t0, delta, count);
        parse_class(s, ScheduleClass::InfDwell, delta);
        return s;
    }
    if (kind == "random") {
        const double dmin = require_number(j, "delta_min", "schedule");
        const double dmax = require_number(j, "delta_max", "schedule");
        const auto seed = static_cast<std::uint64_t>(number_or(j, "seed", 1.0));
        int count;
        if (j.contains("count")) {
            count = j["count"].get<int>();
        } else {
            count = static_cast<int>(std::ceil((t_end - t0) / dmin)) + 1;
        }
        ImpulseSchedule s = gen_random_dwell(t0, dmin, dmax, count, seed);
        parse_class(s, ScheduleClass::InfDwell, dmin);
        return s;
    }
    if (kind == "explicit") {
        ImpulseSchedule s;
        if (j.contains("times")) s.times = require_vector(j, "times", "schedule");
        parse_class(s, ScheduleClass::All, 0.0);
        return s;
    }
    throw ConfigError("config: unknown schedule kind \"" + kind + "\"");
}

History parse_history(const json& j, int dim, double t0, double horizon,
                      const History& fallback) {
    if (j.is_null()) return fallback;
    reject_unknown(j, {"kind", "values", "slope", "times", "samples"}, "initial_history");
    const std::string kind = j.value("kind", "constant");
    if (kind == "constant") {
        Vec v = require_vector(j, "values", "initial_history");
        if (static_cast<int>(v.size()) != dim)
            throw ConfigError("config: initial_history values must have the simulated dimension");
        return History::constant(dim, t0, horizon, v);
    }
    if (kind == "linear") {
        Vec v = require_vector(j, "values", "initial_history");
        Vec s = require_vector(j, "slope", "initial_history");
        if (static_cast<int>(v.size()) != dim || static_cast<int>(s.size()) != dim)
            throw ConfigError("config: initial_history values/slope must have the simulated dimension");
        return History::linear(dim, t0, horizon, v, s);
    }
    if (kind == "sampled") {
        Vec times = require_vector(j, "times", "initial_history");
        if (!j.contains("samples") || !j["samples"].is_array())
            throw ConfigError("config: sampled initial_history needs \"samples\"");
        std::vector<Vec> values;
        for (const auto& row : j["samples"]) {
            Vec v;
            for (const auto& e : row) v.push_back(e.get<double>());
            if (static_cast<int>(v.size()) != dim)
                throw ConfigError("config: sampled initial_history row dimension mismatch");
            values.push_back(std::move(v));
        }
        return History::from_samples(dim, t0, horizon, times, values);
    }
    throw ConfigError("config: unknown initial_history kind \"" + kind + "\"");
}

void build_linear(ScenarioRun& run, const json& sys) {
    reject_unknown(sys,
                   {"kind", "A", "A_delay", "flow_delay", "B", "J", "J_delay",
                    "jump_delay", "D"},
                   "system");
    if (!sys.contains("A")) throw ConfigError("config: linear system requires \"A\"");
    Matrix A = parse_matrix(sys["A"], "system.A");
    if (A.rows() != A.cols()) throw ConfigError("config: A must be square");
    const int n = A.rows();

    std::optional<Matrix> Ad, B, J, Jd, D;
    double flow_delay = number_or(sys, "flow_delay", 0.0);
    double jump_delay = number_or(sys, "jump_delay", 0.0);
    if (sys.contains("A_delay")) Ad = parse_matrix(sys["A_delay"], "system.A_delay");
    if (sys.contains("B")) B = parse_matrix(sys["B"], "system.B");
    if (sys.contains("J")) J = parse_matrix(sys["J"], "system.J");
    if (sys.contains("J_delay")) Jd = parse_matrix(sys["J_delay"], "system.J_delay");
    if (sys.contains("D")) D = parse_matrix(sys["D"], "system.D");
    if (Ad && flow_delay <= 0.0)
        throw ConfigError("config: A_delay requires flow_delay > 0");
    if (Jd && jump_delay <= 0.0)
        throw ConfigError("config: J_delay requires jump_delay > 0");

    int m = 1;
    if (B) m = B->cols();
    if (D) m = std::max(m, D->cols());

    ImpulsiveSystem s;
    s.dimension = n;
    s.input_dimension = m;
    s.delay_bound = std::max(flow_delay, jump_delay);
    // only the flow delay constrains the step: jump maps evaluate on
    // completed history at impulse boundaries
    s.min_discrete_delay = Ad ? flow_delay : 0.0;
    s.flow = [A, Ad, B, flow_delay, n](double, const StateView& x,
                                       std::span<const double> w, std::span<double> dxdt) {
        Vec x0 = x.at(0.0);
        Vec xd;
        if (Ad) xd = x.at(-flow_delay);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += A(i, j) * x0[static_cast<std::size_t>(j)];
            if (Ad)
                for (int j = 0; j < n; ++j) acc += (*Ad)(i, j) * xd[static_cast<std::size_t>(j)];
            if (B)
                for (int j = 0; j < B->cols(); ++j) acc += (*B)(i, j) * w[static_cast<std::size_t>(j)];
            dxdt[static_cast<std::size_t>(i)] = acc;
        }
    };
    s.jump = [J, Jd, D, jump_delay, n](int, double, const StateView& x,
                                       std::span<const double> w, std::span<double> dx) {
        Vec x0 = x.at(0.0);
        Vec xd;
        if (Jd) xd = x.at(-jump_delay);
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            if (J)
                for (int j = 0; j < n; ++j) acc += (*J)(i, j) * x0[static_cast<std::size_t>(j)];
            if (Jd)
                for (int j = 0; j < n; ++j) acc += (*Jd)(i, j) * xd[static_cast<std::size_t>(j)];
            if (D)
                for (int j = 0; j < D->cols(); ++j) acc += (*D)(i, j) * w[static_cast<std::size_t>(j)];
            dx[static_cast<std::size_t>(i)] = acc;
        }
    };

    run.name = "linear";
    run.system = std::move(s);
    run.analysis_offset = 0;
    run.analysis_dim = n;
}

} // namespace

ScenarioRun load_run_config(const json& j) {
    reject_unknown(j, {"system", "input", "schedule", "initial_history", "integration"},
                   "the top level");
    if (!j.contains("system")) throw ConfigError("config: missing \"system\"");
    if (!j.contains("integration")) throw ConfigError("config: missing \"integration\"");
    reject_unknown(j["integration"], {"step", "t_end"}, "integration");

    ScenarioRun run;
    const double t0 = 0.0;

    std::string scenario;
    json params = json::object();
    const json& sys = j["system"];
    if (sys.is_string()) {
        scenario = sys.get<std::string>();
    } else if (sys.is_object() && sys.contains("kind") && sys["kind"] == "linear") {
        scenario = "linear";
    } else if (sys.is_object()) {
        reject_unknown(sys, {"name", "params"}, "system");
        scenario = sys.value("name", "");
        if (sys.contains("params")) params = sys["params"];
    } else {
        throw ConfigError("config: \"system\" must be a builtin name or an object");
    }

    run.t_end = require_number(j["integration"], "t_end", "integration");
    if (run.t_end <= t0) throw ConfigError("config: t_end must exceed t0 = 0");

    double default_step = 0.0;
    if (scenario == "example1") {
        Example1Params p;
        reject_unknown(params, {"a", "b", "tau", "eps"}, "system.params");
        p.a = number_or(params, "a", p.a);
        p.b = number_or(params, "b", p.b);
        p.tau = number_or(params, "tau", p.tau);
        p.eps = number_or(params, "eps", p.eps);
        run.name = "example1";
        run.ex1 = p;
        run.system = example1_system(p);
        run.pair = example1_lyapunov(p);
        run.analysis_offset = 0;
        run.analysis_dim = 1;
        run.initial = example1_nominal_history(p);
        default_step = 0.005;
    } else if (scenario == "example2") {
        Example2Params p = Example2Params::chua();
        reject_unknown(params, {"r", "d", "eps", "L", "A", "B", "C", "D"}, "system.params");
        p.r = number_or(params, "r", p.r);
        p.d = number_or(params, "d", p.d);
        p.eps = number_or(params, "eps", p.eps);
        p.L = number_or(params, "L", p.L);
        if (params.contains("A")) p.A = parse_matrix(params["A"], "system.params.A");
        if (params.contains("B")) p.B = parse_matrix(params["B"], "system.params.B");
        if (params.contains("C")) p.C = parse_matrix(params["C"], "system.params.C");
        if (params.contains("D")) p.D = parse_matrix(params["D"], "system.params.D");
        run.name = "example2";
        run.ex2 = p;
        run.system = example2_coupled_error(p);
        run.pair = example2_lyapunov(p);
        run.analysis_offset = 3;
        run.analysis_dim = 3;
        run.initial = example2_nominal_history(p);
        default_step = 0.002;
    } else if (scenario == "linear") {
        build_linear(run, sys);
        run.initial = History::constant(run.system.dimension, t0, run.system.delay_bound,
                                        Vec(static_cast<std::size_t>(run.system.dimension), 0.0));
    } else {
        throw ConfigError("config: unknown system \"" + scenario + "\"");
    }

    run.step = number_or(j["integration"], "step", default_step);
    if (run.step <= 0.0) throw ConfigError("config: integration step must be > 0");

    run.input = j.contains("input") ? parse_input(j["input"], run.name)
                                    : InputSignal::zero(run.system.input_dimension);
    if (run.input.dimension() != run.system.input_dimension)
        throw ConfigError("config: input dimension does not match the system");

    run.schedule = j.contains("schedule") ? parse_schedule(j["schedule"], t0, run.t_end)
                                          : ImpulseSchedule{};
    auto valid = validate_schedule(run.schedule, t0);
    if (!valid.ok) throw ConfigError("config: schedule invalid: " + valid.message);

    run.initial = parse_history(j.contains("initial_history") ? j["initial_history"] : json(),
                                run.system.dimension, t0, run.system.delay_bound, run.initial);
    return run;
}

ScenarioRun load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: JSON parse error in \"" + path + "\": " + e.what());
    }
    return load_run_config(j);
}

ScenarioResult run_scenario(const ScenarioRun& cfg, const SimOptions& opt) {
    Trajectory full = simulate(cfg.system, cfg.initial, cfg.input, cfg.schedule,
                               cfg.t_end, cfg.step, opt);
    Trajectory analysis =
        (cfg.analysis_offset == 0 && cfg.analysis_dim == full.dimension())
            ? full
            : full.project(cfg.analysis_offset, cfg.analysis_dim);
    return {std::move(full), std::move(analysis)};
}

} // namespace idde
