#include "idde/certificates.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace idde {

namespace {

bool finite_inputs(const CertificateInputs& in) {
    return std::isfinite(in.mu) && std::isfinite(in.rho1) && std::isfinite(in.rho2) &&
           std::isfinite(in.r) && (!in.kappa || std::isfinite(*in.kappa));
}

void fail(CertificateReport& rep, const std::string& msg) {
    rep.precondition_ok = false;
    rep.diagnostics.push_back(msg);
}

double combo_of(const CertificateInputs& in) {
    return in.rho1 + in.rho2 + (1.0 - in.rho1) * in.kappa.value_or(0.0);
}

} // namespace

const char* to_string(AdmissibleSet s) {
    switch (s) {
    case AdmissibleSet::AllPositiveDelta: return "all delta > 0";
    case AdmissibleSet::DeltaGreaterThan: return "delta > delta_star";
    case AdmissibleSet::DeltaLessThan: return "0 < delta < delta_star";
    case AdmissibleSet::AllSchedules: return "all schedules";
    case AdmissibleSet::Empty: return "empty";
    }
    return "?";
}

CertificateReport thm1_certificate(const CertificateInputs& in, double delta_query) {
    CertificateReport rep;
    rep.theorem = "T1";
    rep.inputs = in;
    rep.delta_query = delta_query;

    if (!finite_inputs(in)) fail(rep, "inputs must be finite");
    if (!(in.mu > 0.0)) fail(rep, "requires mu > 0 (stabilizing flow rate)");
    if (!(in.rho1 >= 1.0)) fail(rep, "requires rho1 >= 1 (destabilizing jump hypothesis)");
    if (in.rho2 < 0.0) fail(rep, "requires rho2 >= 0");
    if (in.r < 0.0) fail(rep, "requires r >= 0");
    if (!rep.precondition_ok) return rep;

    rep.rho = in.rho1 + in.rho2 * std::exp(in.mu * in.r);
    rep.delta_star = std::log(rep.rho) / in.mu;
    rep.admissible = rep.delta_star <= 0.0 ? AdmissibleSet::AllPositiveDelta
                                           : AdmissibleSet::DeltaGreaterThan;
    rep.margin = in.mu * delta_query - std::log(rep.rho);
    rep.admissible_at_query = delta_query > 0.0 && rep.margin > 0.0;
    return rep;
}

CertificateReport thm2_certificate(const CertificateInputs& in, double delta_query) {
    CertificateReport rep;
    rep.theorem = "T2";
    rep.inputs = in;
    rep.delta_query = delta_query;

    if (!finite_inputs(in)) fail(rep, "inputs must be finite");
    if (!(in.mu > 0.0)) fail(rep, "requires mu > 0 (stabilizing flow rate)");
    if (!(in.rho1 >= 0.0 && in.rho1 < 1.0)) fail(rep, "requires 0 <= rho1 < 1");
    if (in.rho2 < 0.0) fail(rep, "requires rho2 >= 0");
    if (!in.kappa) fail(rep, "requires kappa (functional comparison gain)");
    if (in.kappa && *in.kappa < 0.0) fail(rep, "requires kappa >= 0");
    if (in.r < 0.0) fail(rep, "requires r >= 0");
    if (rep.precondition_ok && combo_of(in) < 1.0) {
        std::ostringstream os;
        os << "rho1 + rho2 + (1-rho1)*kappa = " << combo_of(in)
           << " < 1: outside this criterion's hypothesis (the all-schedules criterion applies)";
        fail(rep, os.str());
    }
    if (!rep.precondition_ok) return rep;

    rep.rho = in.rho1 + (in.rho2 + (1.0 - in.rho1) * *in.kappa) * std::exp(in.mu * in.r);
    rep.delta_star = std::log(rep.rho) / in.mu;
    rep.admissible = rep.delta_star <= 0.0 ? AdmissibleSet::AllPositiveDelta
                                           : AdmissibleSet::DeltaGreaterThan;
    rep.margin = in.mu * delta_query - std::log(rep.rho);
    rep.admissible_at_query = delta_query > 0.0 && rep.margin > 0.0;
    return rep;
}

CertificateReport thm3_certificate(const CertificateInputs& in, double delta_query) {
    CertificateReport rep;
    rep.theorem = "T3";
    rep.inputs = in;
    rep.delta_query = delta_query;

    if (!finite_inputs(in)) fail(rep, "inputs must be finite");
    if (!(in.mu > 0.0)) fail(rep, "requires mu > 0 (flow growth rate)");
    if (!(in.rho1 >= 0.0 && in.rho1 < 1.0)) fail(rep, "requires 0 <= rho1 < 1");
    if (in.rho2 < 0.0) fail(rep, "requires rho2 >= 0");
    if (!in.kappa) fail(rep, "requires kappa (functional comparison gain)");
    if (in.kappa && *in.kappa < 0.0) fail(rep, "requires kappa >= 0");
    if (in.r < 0.0) fail(rep, "requires r >= 0");
    if (!rep.precondition_ok) return rep;

    const double combo = combo_of(in);
    rep.rho = combo;
    if (combo >= 1.0) {
        // hypotheses hold but no maximum dwell time can certify stability
        rep.admissible = AdmissibleSet::Empty;
        rep.delta_star = 0.0;
        rep.margin = -in.mu * delta_query - std::log(combo);
        rep.admissible_at_query = false;
        std::ostringstream os;
        os << "combo = " << combo << " >= 1: impulses do not contract, no admissible delta";
        rep.diagnostics.push_back(os.str());
        return rep;
    }
    if (combo <= 0.0) {
        // total contraction at every impulse; any spacing qualifies
        rep.admissible = AdmissibleSet::AllPositiveDelta;
        rep.delta_star = std::numeric_limits<double>::infinity();
        rep.margin = std::numeric_limits<double>::infinity();
        rep.admissible_at_query = delta_query > 0.0;
        return rep;
    }
    rep.delta_star = -std::log(combo) / in.mu;
    rep.admissible = AdmissibleSet::DeltaLessThan;
    rep.margin = -in.mu * delta_query - std::log(combo);
    rep.admissible_at_query = delta_query > 0.0 && rep.margin > 0.0;
    return rep;
}

CertificateReport thm4_check(const CertificateInputs& in) {
    CertificateReport rep;
    rep.theorem = "T4";
    rep.inputs = in;

    if (!finite_inputs(in)) fail(rep, "inputs must be finite");
    if (!(in.mu >= 0.0)) fail(rep, "requires mu >= 0");
    if (!(in.rho1 >= 0.0 && in.rho1 < 1.0)) fail(rep, "requires 0 <= rho1 < 1");
    if (in.rho2 < 0.0) fail(rep, "requires rho2 >= 0");
    if (!in.kappa) fail(rep, "requires kappa (functional comparison gain)");
    if (in.kappa && *in.kappa < 0.0) fail(rep, "requires kappa >= 0");
    if (!rep.precondition_ok) return rep;

    const double combo = combo_of(in);
    rep.rho = combo;
    rep.margin = 1.0 - combo;
    if (combo < 1.0) {
        rep.admissible = AdmissibleSet::AllSchedules;
        rep.admissible_at_query = true;
    } else {
        rep.admissible = AdmissibleSet::Empty;
        rep.admissible_at_query = false;
        std::ostringstream os;
        os << "combo = " << combo << " >= 1: not contracting under arbitrary schedules";
        rep.diagnostics.push_back(os.str());
    }
    return rep;
}

Remark3Comparison remark3_compare(const CertificateInputs& in) {
    if (in.rho2 != 0.0)
        throw ParameterError("remark3_compare: defined for rho2 = 0 (delay-free jumps)");
    if (!in.kappa) throw ParameterError("remark3_compare: kappa required");
    if (!(in.mu > 0.0) || !(in.rho1 >= 0.0 && in.rho1 < 1.0) || *in.kappa < 0.0)
        throw ParameterError("remark3_compare: maximum-dwell preconditions violated");

    Remark3Comparison cmp;
    const double ours_combo = in.rho1 + (1.0 - in.rho1) * *in.kappa;
    const double theirs_combo = in.rho1 + *in.kappa;
    if (ours_combo <= 0.0 || ours_combo >= 1.0) {
        cmp.ours = 0.0;
    } else {
        cmp.ours = -std::log(ours_combo) / in.mu;
    }
    cmp.theirs_defined = theirs_combo > 0.0 && theirs_combo < 1.0;
    if (cmp.theirs_defined) {
        cmp.theirs = -std::log(theirs_combo) / in.mu;
        cmp.ratio = cmp.theirs != 0.0 ? cmp.ours / cmp.theirs : 0.0;
    }
    // rho1 + (1-rho1)kappa <= rho1 + kappa, so -ln is >=
    cmp.ours_not_smaller = !cmp.theirs_defined || cmp.ours >= cmp.theirs;
    return cmp;
}

ComboMinimum min_combo(double a, double b, double kappa) {
    if (!(kappa >= 0.0 && kappa < 1.0))
        throw ParameterError("min_combo: kappa must lie in [0, 1)");
    if (a < 0.0 || b < 0.0) throw ParameterError("min_combo: a, b must be >= 0");

    ComboMinimum out;
    if (a == 0.0 || b == 0.0) {
        // the xi-dependent cross term vanishes only in the limit
        out.value = (1.0 - kappa) * a * a + b * b + kappa;
        return out;
    }
    const double root = std::sqrt(1.0 - kappa);
    out.xi_star = b / (a * root);
    const double base = root * a + b;
    out.value = base * base + kappa;
    return out;
}

Example2Derivation example2_derive(const Matrix& A, const Matrix& C, double L,
                                   double r, double d, double eps, double eps1,
                                   double eps2, int zeta, double delta_query) {
    if (A.rows() != A.cols() || C.rows() != C.cols() || A.rows() != C.rows())
        throw ParameterError("example2_derive: A and C must be square with equal size");
    if (!A.finite() || !C.finite())
        throw ParameterError("example2_derive: matrices must be finite");
    if (!(eps > 0.0)) throw ParameterError("example2_derive: eps must be > 0");
    if (!(eps1 > 0.0)) throw ParameterError("example2_derive: eps1 must be > 0");
    if (!(eps2 > 1.0)) throw ParameterError("example2_derive: eps2 must be > 1");
    if (zeta < 0) throw ParameterError("example2_derive: zeta must be >= 0");
    if (L < 0.0 || r < 0.0 || d < 0.0)
        throw ParameterError("example2_derive: L, r, d must be >= 0");

    Example2Derivation out;
    out.lambda_max_sym = lambda_max_symmetric(A + A.transpose());
    out.norm_A = spectral_norm(A);
    out.norm_C = spectral_norm(C);
    out.norm_I_plus_C = spectral_norm(Matrix::identity(A.rows()) + C);

    out.mu = out.lambda_max_sym + L * (eps + 1.0 / eps) + eps1;
    out.kappa = eps * r * L;
    out.a_factor = out.norm_I_plus_C;
    out.b_factor = eps2 * d * out.norm_C * (out.norm_A + L) +
                   static_cast<double>(zeta) * out.norm_C * out.norm_C;

    if (out.kappa >= 1.0)
        throw ParameterError("example2_derive: kappa = eps*r*L >= 1, no contraction possible");

    out.combo = min_combo(out.a_factor, out.b_factor, out.kappa);
    if (out.combo.xi_star) {
        const double xi = *out.combo.xi_star;
        out.rho1 = (1.0 + xi) * out.a_factor * out.a_factor;
        out.rho2 = (1.0 + 1.0 / xi) * out.b_factor * out.b_factor;
    } else {
        out.rho1 = out.a_factor * out.a_factor;
        out.rho2 = out.b_factor * out.b_factor;
    }

    // slack-free form of the feasibility inequality (eps2 -> 1, eps1 -> 0)
    const double b0 = d * out.norm_C * (out.norm_A + L) +
                      static_cast<double>(zeta) * out.norm_C * out.norm_C;
    const double base = std::sqrt(1.0 - out.kappa) * out.norm_I_plus_C + b0;
    out.bound_lhs = std::log(base * base + out.kappa);
    out.bound_rhs = -(out.lambda_max_sym + L * (eps + 1.0 / eps)) * delta_query;
    out.bound_feasible = out.bound_lhs < out.bound_rhs;

    CertificateInputs in;
    in.mu = out.mu;
    in.rho1 = out.rho1;
    in.rho2 = out.rho2;
    in.kappa = out.kappa;
    in.r = r;
    out.certificate = thm3_certificate(in, delta_query);
    return out;
}

} // namespace idde
