#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idde/linalg.hpp"

namespace idde {

/// Constants entering the dwell-time criteria. `mu` is the flow-side rate
/// (decay rate for T1/T2 where the flow is stabilizing, growth rate for T3
/// where it may be unstable); rho1/rho2 bound the delay-independent and
/// delay-dependent jump effects; kappa compares the functional part against
/// a windowed sup of the function part; r is the delay bound.
struct CertificateInputs {
    double mu = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    std::optional<double> kappa;
    double r = 0.0;
};

enum class AdmissibleSet {
    AllPositiveDelta,  // every delta > 0 qualifies
    DeltaGreaterThan,  // minimum-dwell classes: delta > delta_star
    DeltaLessThan,     // maximum-dwell classes: 0 < delta < delta_star
    AllSchedules,      // unconstrained class
    Empty,
};

struct CertificateReport {
    std::string theorem;               // "T1".."T4"
    CertificateInputs inputs;
    double rho = 0.0;                  // composed jump factor (T1/T2) or combo (T3/T4)
    double delta_star = 0.0;           // threshold; meaning depends on `admissible`
    AdmissibleSet admissible = AdmissibleSet::Empty;
    double delta_query = 0.0;
    double margin = 0.0;               // > 0 iff the inequality holds strictly at delta_query
    bool admissible_at_query = false;
    bool precondition_ok = true;
    std::vector<std::string> diagnostics;
};

const char* to_string(AdmissibleSet s);

/// Stabilizing flow, destabilizing jumps. rho = rho1 + rho2*e^{mu r};
/// admissible iff ln(rho) < mu*delta (minimum dwell). Preconditions
/// mu > 0, rho1 >= 1, rho2 >= 0.
CertificateReport thm1_certificate(const CertificateInputs& in, double delta_query);

/// Stabilizing flow, contracting delay-free jump part (rho1 < 1) but
/// combo = rho1 + rho2 + (1-rho1)*kappa >= 1. rho = rho1 +
/// [rho2 + (1-rho1)*kappa]*e^{mu r}; admissible iff ln(rho) < mu*delta.
CertificateReport thm2_certificate(const CertificateInputs& in, double delta_query);

/// Destabilizing flow, stabilizing jumps. Admissible iff
/// ln(combo) < -mu*delta, i.e. 0 < delta < -ln(combo)/mu (maximum dwell);
/// empty when combo >= 1.
CertificateReport thm3_certificate(const CertificateInputs& in, double delta_query);

/// Both sides stable: every schedule qualifies iff combo < 1.
CertificateReport thm4_check(const CertificateInputs& in);

/// Maximum-dwell bound comparison for delay-free jumps (rho2 = 0):
/// ours = -ln(rho1 + (1-rho1)*kappa)/mu vs the reference bound
/// -ln(rho1 + kappa)/mu; ours is never smaller when rho1 + kappa < 1.
struct Remark3Comparison {
    double ours = 0.0;
    double theirs = 0.0;
    bool theirs_defined = false;  // false when rho1 + kappa >= 1
    double ratio = 0.0;           // ours / theirs when both defined
    bool ours_not_smaller = false;
};

Remark3Comparison remark3_compare(const CertificateInputs& in);

/// Closed-form minimum over xi > 0 of
///   (1-kappa)(1+xi) a^2 + (1+1/xi) b^2 + kappa,
/// which is (sqrt(1-kappa) a + b)^2 + kappa at xi* = b / (a sqrt(1-kappa)).
/// Degenerate a = 0 or b = 0: the infimum (1-kappa)a^2 + b^2 + kappa is
/// attained only in the limit and xi_star is absent.
struct ComboMinimum {
    double value = 0.0;
    std::optional<double> xi_star;
};

ComboMinimum min_combo(double a, double b, double kappa);

/// Constants for the synchronization-error certificate of the coupled
/// Lipschitz-nonlinearity instance: given flow matrix A, jump matrix C,
/// Lipschitz constant L, delays r (flow) and d (jump), Lyapunov weight eps,
/// slack constants eps1 (close to 0) and eps2 (close to 1 from above), and
/// the impulse-count zeta on (t_k - d, t_k), derive
///   mu    = lambda_max(A + A^T) + L (eps + 1/eps) + eps1
///   kappa = eps * r * L
///   a     = ||I + C||,  b = eps2 * d * ||C|| (||A|| + L) + zeta ||C||^2
/// and the maximum-dwell certificate at the queried delta. Matrix norms are
/// spectral, computed with the self-contained Jacobi routine.
struct Example2Derivation {
    double mu = 0.0;
    double kappa = 0.0;
    double a_factor = 0.0;
    double b_factor = 0.0;
    double lambda_max_sym = 0.0;   // lambda_max(A + A^T)
    double norm_A = 0.0;
    double norm_I_plus_C = 0.0;
    double norm_C = 0.0;
    ComboMinimum combo;
    double rho1 = 0.0;             // at the minimizing xi
    double rho2 = 0.0;
    // the slack-free inequality ln[(sqrt(1-kappa) a0 + b0)^2 + kappa] <
    // -(lambda_max + L(eps+1/eps)) delta, with b0 excluding eps2
    double bound_lhs = 0.0;
    double bound_rhs = 0.0;
    bool bound_feasible = false;
    CertificateReport certificate; // thm3 at delta_query with the derived constants
};

Example2Derivation example2_derive(const Matrix& A, const Matrix& C, double L,
                                   double r, double d, double eps, double eps1,
                                   double eps2, int zeta, double delta_query);

} // namespace idde
