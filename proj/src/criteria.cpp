#include "lagvol/criteria.hpp"

#include "lagvol/errors.hpp"
#include "lagvol/numeric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lagvol {

double q_upper_bound(int n, double gamma)
{
    return -n - 2.0 / (gamma - 1.0);
}

void validate(const CriteriaInputs& inp)
{
    auto fail = [](const std::string& what) { throw InvalidArgument("criteria inputs: " + what); };
    if (inp.n != 2 && inp.n != 3)
        fail("n must be 2 or 3");
    if (!(inp.gamma > 1.0))
        fail("gamma must exceed 1");
    if (!(inp.q < q_upper_bound(inp.n, inp.gamma))) {
        std::ostringstream os;
        os << "q must be below -n - 2/(gamma-1) = " << q_upper_bound(inp.n, inp.gamma);
        fail(os.str());
    }
    if (!(inp.epsilon > 0.0) || !(inp.epsilon < inp.d_init))
        fail("epsilon must satisfy 0 < epsilon < dist(boundary, x0)");
    if (!(inp.M >= 0.0))
        fail("M must be non-negative");
    if (!(inp.T > 0.0))
        fail("T must be positive");
    if (!(inp.m > 0.0))
        fail("mass must be positive");
    if (!(inp.E > 0.0))
        fail("energy must be positive");
    if (!(inp.G0 >= 0.0))
        fail("G0 must be non-negative");
}

Constants constants(double q, double gamma, int n, double s0)
{
    if (n != 2 && n != 3)
        throw InvalidArgument("constants: n must be 2 or 3");
    if (!(gamma > 1.0))
        throw InvalidArgument("constants: gamma must exceed 1");
    if (!(q < q_upper_bound(n, gamma)))
        throw InvalidArgument("constants: q outside the admissible range q < -n - 2/(gamma-1)");
    const double a = (q + n) * (gamma - 1.0) + 2.0;
    if (a == 0.0)
        throw InvalidArgument("constants: (q+n)(gamma-1)+2 vanishes");
    Constants c;
    c.sigma_n = n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
    c.C1 = std::pow(c.sigma_n * (1.0 - gamma) / a, 1.0 - gamma);
    c.C3 = std::exp(s0);
    c.C = c.C1 * c.C3;
    return c;
}

double threshold_quantity(const CriteriaInputs& inp, double C, double G)
{
    const double aq = std::abs(inp.q);
    const double lead = 2.0 * inp.m * inp.E / (1.0 + aq);
    const double eps_pow = std::pow(inp.epsilon, -(inp.q * inp.gamma + inp.n * (inp.gamma - 1.0)));
    const double bracket = 1.0 + inp.epsilon * inp.M / (2.0 * inp.E) -
                           std::abs(inp.q + inp.n - 2.0) * C * std::pow(G, inp.gamma) / (2.0 * inp.E) * eps_pow;
    return lead * bracket;
}

QR q_and_r(const CriteriaInputs& inp, double C)
{
    validate(inp);
    const double Q0 = threshold_quantity(inp, C, inp.G0);
    return {Q0, std::sqrt(std::abs(Q0))};
}

const char* to_string(ThresholdCase c)
{
    switch (c) {
    case ThresholdCase::q_pos: return "Qpos";
    case ThresholdCase::q_zero: return "Qzero";
    case ThresholdCase::q_neg_long: return "Qneg_longT";
    case ThresholdCase::q_neg_short: return "Qneg_shortT";
    }
    return "unknown";
}

bool threshold_is_zero(const CriteriaInputs& inp, double Q0)
{
    const double lead = 2.0 * inp.m * inp.E / (1.0 + std::abs(inp.q));
    return std::abs(Q0) <= 1e-12 * lead;
}

namespace {

// lambda T with lambda = (|q|+1) R0 / (eps m)
double rate_times_horizon(const CriteriaInputs& inp, double R0)
{
    return (std::abs(inp.q) + 1.0) * R0 * inp.T / (inp.epsilon * inp.m);
}

double coth(double x)
{
    return 1.0 / std::tanh(x);
}

} // namespace

DeltaResult classify_and_delta(const CriteriaInputs& inp, double Q0, double R0)
{
    const double aq = std::abs(inp.q);
    const double eps = inp.epsilon;
    DeltaResult d;
    d.long_horizon = R0 > 0.0 ? std::numbers::pi * eps * inp.m / (2.0 * (aq + 1.0) * R0)
                              : std::numeric_limits<double>::infinity();

    if (threshold_is_zero(inp, Q0)) {
        d.threshold_case = ThresholdCase::q_zero;
        d.delta = -std::pow(eps, inp.q) * inp.m / ((aq + 1.0) * inp.T);
        d.delta_printed = d.delta;
        return d;
    }
    const double x = rate_times_horizon(inp, R0);
    const double scale = std::pow(eps, inp.q - 1.0) * R0;
    if (Q0 > 0.0) {
        d.threshold_case = ThresholdCase::q_pos;
        d.delta = -scale * coth(x);
        d.delta_printed = -scale * coth(0.5 * x);
        return d;
    }
    if (inp.T >= d.long_horizon) {
        d.threshold_case = ThresholdCase::q_neg_long;
        d.delta = 0.0;
        d.delta_printed = 0.0;
        return d;
    }
    d.threshold_case = ThresholdCase::q_neg_short;
    if (std::abs(std::sin(x)) <= 1e-12)
        throw DomainError("classify_and_delta: cot argument is a multiple of pi (degenerate)");
    d.delta = -scale * std::cos(x) / std::sin(x);
    d.delta_printed = d.delta;
    return d;
}

double condition10(const MaterialVolume& vol, const FlowField& flow, double q)
{
    if (vol.time != 0.0)
        throw InvalidArgument("condition10: volume must be at t = 0");
    if (!(q < q_upper_bound(vol.dimension, flow.gamma())))
        throw InvalidArgument("condition10: q outside the admissible range");
    return volume_integral_mass(vol, flow, [&](const Vec& x, const FluidState& s) {
        const Vec y = x - vol.x0;
        const double r = norm(y);
        if (!(r > 0.0))
            throw GeometryError("condition10: node coincides with x0");
        return std::pow(r, q - 2.0) * dot(s.vel, y);
    });
}

NecessaryResult necessary_conditions(const CriteriaInputs& inp, double Q0, double R0, ThresholdCase c)
{
    (void)Q0;
    const double aq = std::abs(inp.q);
    const double root = std::sqrt(2.0 * inp.m * inp.E);
    NecessaryResult out;
    NecessaryDetail& d = out.detail;
    switch (c) {
    case ThresholdCase::q_pos:
        d.name = "coth(lambda T) < sqrt(2mE)/R0";
        d.lhs = coth(rate_times_horizon(inp, R0));
        d.rhs = root / R0;
        d.printed_rhs = d.rhs;
        d.small_r_bound = root - inp.epsilon * inp.m / ((1.0 + aq) * inp.T);
        break;
    case ThresholdCase::q_zero:
        d.name = "eps/((|q|+1)T) sqrt(m/(2E)) < 1";
        d.lhs = inp.epsilon / ((aq + 1.0) * inp.T) * std::sqrt(inp.m / (2.0 * inp.E));
        d.rhs = 1.0;
        d.printed_rhs = 1.0;
        break;
    case ThresholdCase::q_neg_short: {
        const double x = rate_times_horizon(inp, R0);
        d.name = "cot(lambda T) < sqrt(2mE)/R0";
        d.lhs = std::cos(x) / std::sin(x);
        d.rhs = root / R0;
        d.printed_rhs = 2.0 * inp.m * inp.E / R0;
        break;
    }
    case ThresholdCase::q_neg_long:
        d.name = "none (delta = 0)";
        d.lhs = 0.0;
        d.rhs = 0.0;
        d.printed_rhs = 0.0;
        d.slack = 0.0;
        out.ok = true;
        return out;
    }
    d.slack = d.rhs - d.lhs;
    out.ok = d.lhs < d.rhs;
    return out;
}

CriteriaReport evaluate_criteria(const CriteriaInputs& inp)
{
    validate(inp);
    CriteriaReport r;
    r.inputs = inp;
    r.constants = constants(inp.q, inp.gamma, inp.n, inp.s0);
    const QR qr = q_and_r(inp, r.constants.C);
    r.Q0 = qr.Q0;
    r.R0 = qr.R0;
    const DeltaResult d = classify_and_delta(inp, qr.Q0, qr.R0);
    r.threshold_case = d.threshold_case;
    r.delta = d.delta;
    r.delta_printed = d.delta_printed;
    r.long_horizon = d.long_horizon;
    r.cond10_holds = inp.cond10 < d.delta;
    const NecessaryResult nec = necessary_conditions(inp, qr.Q0, qr.R0, d.threshold_case);
    r.nec_ok = nec.ok;
    r.nec_detail = nec.detail;
    return r;
}

} // namespace lagvol
