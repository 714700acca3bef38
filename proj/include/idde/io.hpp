#pragma once

#include <iosfwd>

#include <json.hpp>

#include "idde/certificates.hpp"
#include "idde/lyapunov.hpp"
#include "idde/verifier.hpp"

namespace idde {

/// "%.15g" — 15 significant digits, the CSV round-trip precision.
std::string format_number(double v);

/// Columns: t, x_1..x_n, w_1..w_m, norm_x[, V, V1, V2]. One row per grid
/// node from t0 on; jump times contribute a pre-side and a post-side row.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const LyapunovPair* pair = nullptr);

/// Columns: k, t_k, pre_norm, post_norm, jump_norm.
void write_events_csv(std::ostream& os, const Trajectory& traj);

nlohmann::json certificate_to_json(const CertificateReport& rep);
nlohmann::json derivation_to_json(const Example2Derivation& der);
nlohmann::json envelope_to_json(const EnvelopeSpec& env);

} // namespace idde
