#pragma once

#include "lagvol/flowfield.hpp"
#include "lagvol/matvol.hpp"

#include <string>

namespace lagvol {

/// Scalars the attainment criterion depends on, all taken at t = 0.
struct CriteriaInputs {
    double q = -8.0;
    double gamma = 1.4;
    int n = 2;
    double s0 = 0.0;
    double m = 1.0;
    double E = 1.0;
    double M = 0.0;
    double epsilon = 0.5;
    double T = 1.0;
    double G0 = 0.0;
    double cond10 = 0.0;
    double d_init = 1.0;
};

/// Upper end of the admissible moment exponents, -n - 2/(gamma - 1).
double q_upper_bound(int n, double gamma);

/// Throws InvalidArgument naming the first violated hypothesis.
void validate(const CriteriaInputs& inp);

struct Constants {
    double sigma_n = 0.0; // measure of the unit sphere
    double C1 = 0.0;
    double C3 = 0.0;
    double C = 0.0;
};

/// C1 = (sigma_n (1 - gamma) / ((q + n)(gamma - 1) + 2))^(1 - gamma),
/// C3 = e^s0, C = C1 C3.
Constants constants(double q, double gamma, int n, double s0);

/// Q_q for a given moment value G:
///   2mE/(1+|q|) * (1 + eps M/(2E) - |q+n-2| C G^gamma/(2E) * eps^-(q gamma + n(gamma-1))).
double threshold_quantity(const CriteriaInputs& inp, double C, double G);

struct QR {
    double Q0 = 0.0;
    double R0 = 0.0;
};

QR q_and_r(const CriteriaInputs& inp, double C);

/// Q0 counts as zero when |Q0| <= 1e-12 * 2mE/(1+|q|).
bool threshold_is_zero(const CriteriaInputs& inp, double Q0);

enum class ThresholdCase { q_pos, q_zero, q_neg_long, q_neg_short };

const char* to_string(ThresholdCase c);

struct DeltaResult {
    ThresholdCase threshold_case = ThresholdCase::q_pos;
    double delta = 0.0;
    // Variant with half the hyperbolic argument in the positive case; equal
    // to delta in the other cases.
    double delta_printed = 0.0;
    // Horizon separating the two negative cases, pi eps m / (2 (|q|+1) R0).
    double long_horizon = 0.0;
};

/// Selects the sign case of Q0 and the matching threshold delta <= 0.
///
/// Q0 > 0:  delta = -eps^(q-1) R0 coth(lambda T),  lambda = (|q|+1) R0 / (eps m)
/// Q0 = 0:  delta = -eps^q m / ((|q|+1) T)
/// Q0 < 0, T >= pi/(2 lambda): delta = 0
/// Q0 < 0, T <  pi/(2 lambda): delta = -eps^(q-1) R0 cot(lambda T)
///
/// Each delta is the value for which |q| |delta| is the smallest F_q(0) that
/// makes the comparison Riccati equation dF/dt = k (F^2 - q^2 eps^(2q-2) Q0)
/// blow up before T. Q0 counts as zero when |Q0| <= 1e-12 * 2mE/(1+|q|).
DeltaResult classify_and_delta(const CriteriaInputs& inp, double Q0, double R0);

/// Integral over the initial volume of |x-x0|^(q-2) (V0, x-x0) rho0.
double condition10(const MaterialVolume& vol, const FlowField& flow, double q);

struct NecessaryDetail {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs
    // Alternative (looser) right-hand side where it differs from the derived one.
    double printed_rhs = 0.0;
    // Sufficient small-R0 bound in the positive case (0 otherwise).
    double small_r_bound = 0.0;
};

struct NecessaryResult {
    bool ok = true;
    NecessaryDetail detail;
};

/// Compatibility of the threshold with |F_q(0)| <= |q| eps^(q-1) sqrt(2mE).
NecessaryResult necessary_conditions(const CriteriaInputs& inp, double Q0, double R0, ThresholdCase c);

struct CriteriaReport {
    CriteriaInputs inputs;
    Constants constants;
    double Q0 = 0.0;
    double R0 = 0.0;
    ThresholdCase threshold_case = ThresholdCase::q_pos;
    double delta = 0.0;
    double delta_printed = 0.0;
    double long_horizon = 0.0;
    bool cond10_holds = false;
    bool nec_ok = true;
    NecessaryDetail nec_detail;
};

CriteriaReport evaluate_criteria(const CriteriaInputs& inp);

} // namespace lagvol
