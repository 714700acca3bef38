#pragma once

namespace idde {

/// Subcommands: simulate | certify | verify-iss | sweep. Machine-readable
/// payloads go to stdout, diagnostics to stderr. Exit codes: 0 success /
/// admissible / pass, 1 certificate not admissible, 2 configuration error,
/// 3 divergence, 4 no ISS witness found.
int run_cli(int argc, const char* const* argv);

} // namespace idde
