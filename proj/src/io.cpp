#include "idde/io.hpp"

#include <cstdio>
#include <ostream>

namespace idde {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const LyapunovPair* pair) {
    const History& h = traj.history;
    const int n = h.dimension();
    const int m = traj.input.dimension();

    os << "t";
    for (int c = 1; c <= n; ++c) os << ",x_" << c;
    for (int c = 1; c <= m; ++c) os << ",w_" << c;
    os << ",norm_x";
    if (pair) os << ",V,V1,V2";
    os << "\n";

    Vec w(m);
    for (std::size_t i = h.first_node_at_or_after(traj.t0); i < h.node_count(); ++i) {
        const double t = h.node_time(i);
        auto x = h.node_value(i);
        // the pre-side row at a jump reports the input's left limit
        const bool pre_side = i + 1 < h.node_count() && h.node_time(i + 1) == t;
        if (pre_side)
            traj.input.left_limit_into(t, w);
        else
            traj.input.value_into(t, w);

        os << format_number(t);
        for (int c = 0; c < n; ++c) os << ',' << format_number(x[static_cast<std::size_t>(c)]);
        for (int c = 0; c < m; ++c) os << ',' << format_number(w[static_cast<std::size_t>(c)]);
        os << ',' << format_number(norm2(x));
        if (pair) {
            double v1 = pair->V1 ? pair->V1(t, x) : 0.0;
            double v2 = 0.0;
            if (pair->V2) {
                StateView view(h, t, pair->lookback);
                v2 = pair->V2(t, view);
            }
            os << ',' << format_number(v1 + v2) << ',' << format_number(v1) << ','
               << format_number(v2);
        }
        os << "\n";
    }
}

void write_events_csv(std::ostream& os, const Trajectory& traj) {
    os << "k,t_k,pre_norm,post_norm,jump_norm\n";
    for (const auto& ev : traj.events) {
        os << ev.k << ',' << format_number(ev.t) << ',' << format_number(norm2(ev.pre)) << ','
           << format_number(norm2(ev.post)) << ',' << format_number(norm2(ev.delta)) << "\n";
    }
}

nlohmann::json certificate_to_json(const CertificateReport& rep) {
    nlohmann::json j;
    j["theorem"] = rep.theorem;
    j["inputs"] = {{"mu", rep.inputs.mu},
                   {"rho1", rep.inputs.rho1},
                   {"rho2", rep.inputs.rho2},
                   {"r", rep.inputs.r}};
    if (rep.inputs.kappa) j["inputs"]["kappa"] = *rep.inputs.kappa;
    j["rho"] = rep.rho;
    j["delta_star"] = rep.delta_star;
    j["admissible"] = to_string(rep.admissible);
    j["delta_query"] = rep.delta_query;
    j["margin_at_query"] = rep.margin;
    j["admissible_at_query"] = rep.admissible_at_query;
    j["precondition_ok"] = rep.precondition_ok;
    j["diagnostics"] = rep.diagnostics;
    return j;
}

nlohmann::json derivation_to_json(const Example2Derivation& der) {
    nlohmann::json j;
    j["mu"] = der.mu;
    j["kappa"] = der.kappa;
    j["a"] = der.a_factor;
    j["b"] = der.b_factor;
    j["lambda_max_sym"] = der.lambda_max_sym;
    j["norm_A"] = der.norm_A;
    j["norm_I_plus_C"] = der.norm_I_plus_C;
    j["norm_C"] = der.norm_C;
    j["combo_min"] = der.combo.value;
    if (der.combo.xi_star) j["xi_star"] = *der.combo.xi_star;
    j["rho1"] = der.rho1;
    j["rho2"] = der.rho2;
    j["bound_lhs"] = der.bound_lhs;
    j["bound_rhs"] = der.bound_rhs;
    j["bound_feasible"] = der.bound_feasible;
    j["certificate"] = certificate_to_json(der.certificate);
    return j;
}

nlohmann::json envelope_to_json(const EnvelopeSpec& env) {
    return {{"M", env.M}, {"lambda", env.lambda}, {"c", env.c}, {"q", env.q}};
}

} // namespace idde
