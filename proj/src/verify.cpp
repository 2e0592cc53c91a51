#include "lagvol/verify.hpp"

#include "lagvol/errors.hpp"
#include "lagvol/numeric.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <future>
#include <random>
#include <sstream>

namespace lagvol {

CheckReport make_check(std::string name, double lhs, double rhs, double tolerance, double t)
{
    CheckReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.tolerance = tolerance;
    r.passed = r.slack >= -tolerance;
    r.t = t;
    return r;
}

LemmaTolerances grid_tolerances()
{
    return {1e-3, 5e-2, 1e-10};
}

namespace {

double largest(std::initializer_list<double> xs)
{
    double m = 0.0;
    for (double x : xs)
        m = std::max(m, std::abs(x));
    return m;
}

MaterialVolume advance_to(const MaterialVolume& vol, const FlowField& flow, double t, double dt)
{
    if (t > vol.time)
        return advect(vol, flow, t, std::min(dt, t - vol.time));
    return vol;
}

} // namespace

std::vector<CheckReport> check_lemma_suite(const FlowField& flow, const MaterialVolume& vol, const PhiSpec& phi,
                                           double t, double h, double epsilon, double dt,
                                           const LemmaTolerances& tol)
{
    if (!(h > 0.0))
        throw InvalidArgument("check_lemma_suite: h must be positive");
    const double t0 = t - h;
    if (vol.time > t0 + 1e-12 * std::max(1.0, std::abs(t0)))
        throw InvalidArgument("check_lemma_suite: volume is later than t - h");
    if (!flow.window().contains(t0) || !flow.window().contains(t + h))
        throw DomainError("check_lemma_suite: stencil [t-h, t+h] leaves the flow's time window");

    const MaterialVolume v0 = advance_to(vol, flow, t0, dt);
    const MaterialVolume v1 = advect(v0, flow, t, h);
    const MaterialVolume v2 = advect(v1, flow, t + h, h);

    const double g0 = moment(v0, phi);
    const double g2 = moment(v2, phi);
    const FunctionalSample s = sample(flow, v1, phi, epsilon);
    const double g1 = s.G;

    std::vector<CheckReport> out;

    const double dG = (g2 - g0) / (2.0 * h);
    out.push_back(make_check("lemma1_first", std::abs(dG - s.F), 0.0, tol.first * std::max(std::abs(s.F), 1e-12), t));

    const double d2G = (g2 - 2.0 * g1 + g0) / (h * h);
    const double sumI = s.I1 + s.I2 + s.I3 + s.I4;
    const double scaleI = std::abs(s.I1) + std::abs(s.I2) + std::abs(s.I3) + std::abs(s.I4);
    out.push_back(make_check("lemma1_second", std::abs(d2G - sumI), 0.0, tol.second * std::max(scaleI, 1e-300), t));

    const double F2 = s.F * s.F;
    const double sup = holder_ratio_sup(v1, phi);
    const double generic_rhs = sup * s.G * s.I1;
    out.push_back(make_check("lemma2_generic", F2, generic_rhs, tol.inequality * largest({F2, generic_rhs}), t));

    if (const auto q = phi.exponent()) {
        const double aq = std::abs(*q);
        const double sharp = aq / (aq + 1.0) * s.G * s.I1;
        const double printed = (aq + 1.0) / aq * s.G * s.I1;
        out.push_back(make_check("lemma2_sharp", F2, sharp, tol.inequality * largest({F2, sharp}), t));
        out.push_back(make_check("lemma2_printed", F2, printed, tol.inequality * largest({F2, printed}), t));

        const int n = v1.dimension;
        const double gamma = flow.gamma();
        if (*q < q_upper_bound(n, gamma) && boundary_distance(v1) >= epsilon) {
            const Constants c = constants(*q, gamma, n, 0.0);
            const double a = (*q + n) * (gamma - 1.0) + 2.0;
            const double bound = c.C1 * std::pow(s.G, gamma) * std::pow(epsilon, -a);
            const double integral = weighted_rho_gamma(flow, v1, *q);
            out.push_back(make_check("lemma3", bound, integral, tol.inequality * largest({bound, integral}), t));
        }
    }
    return out;
}

std::vector<CheckReport> check_inequality17(const std::vector<FunctionalSample>& series, const CriteriaInputs& inp,
                                            double C)
{
    if (series.size() < 3)
        throw InvalidArgument("check_inequality17: needs at least 3 samples");
    const double step = series[1].t - series[0].t;
    if (!(step > 0.0))
        throw InvalidArgument("check_inequality17: samples must increase in time");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (std::abs(series[i].t - series[i - 1].t - step) > 1e-9 * step)
            throw InvalidArgument("check_inequality17: samples must be uniformly spaced");

    const double aq = std::abs(inp.q);
    const double eps = inp.epsilon;
    std::vector<CheckReport> out;
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const FunctionalSample& s = series[i];
        CriteriaInputs live = inp;
        live.m = s.m;
        live.E = s.E;
        const double Q = threshold_quantity(live, C, s.G);
        const double k = (aq + 1.0) / (aq * std::pow(eps, inp.q) * s.m);
        const double quad = k * s.F * s.F;
        const double shift = k * inp.q * inp.q * std::pow(eps, 2.0 * inp.q - 2.0) * Q;
        const double lhs = quad - shift;
        const double dF = (series[i + 1].F - series[i - 1].F) / (2.0 * step);

        double trunc = 0.0;
        if (i >= 2 && i + 2 < series.size()) {
            const double third = (series[i + 2].F - 2.0 * series[i + 1].F + 2.0 * series[i - 1].F - series[i - 2].F) /
                                 (2.0 * step * step * step);
            trunc = std::abs(third) * step * step / 6.0;
        }
        const double tol = 1e-3 * largest({dF, quad, shift}) + trunc;
        out.push_back(make_check("inequality17", lhs, dF, tol, s.t));
    }
    return out;
}

std::vector<CheckReport> check_bounds_chain(const FunctionalSample& s, double dist, double q, double epsilon)
{
    std::vector<CheckReport> out;
    if (dist < epsilon)
        return out;
    const double aq = std::abs(q);
    const double rel = 1e-10;
    const double b21 = aq * std::pow(epsilon, q - 1.0) * std::sqrt(2.0 * s.m * s.E);
    const double bI2 = 2.0 * aq * std::pow(epsilon, q - 2.0) * s.E;
    const double bI4 = aq * std::pow(epsilon, q - 1.0) * std::abs(s.reg);
    const double bG = std::pow(epsilon, q) * s.m;
    out.push_back(make_check("bound21", std::abs(s.F), b21, rel * b21, s.t));
    out.push_back(make_check("bound_I2", std::abs(s.I2), bI2, rel * bI2, s.t));
    out.push_back(make_check("bound_I4", std::abs(s.I4), bI4, rel * largest({bI4, s.I4}), s.t));
    out.push_back(make_check("bound_G", s.G, bG, rel * bG, s.t));
    return out;
}

namespace {

using OdeState = std::array<double, 1>;

// Time at which dF/dt = k (F^2 - c) first pushes F above 1e12 * scale, or
// nothing before `t_cap`.
std::optional<double> integrate_blowup(double F0, double k, double c, double scale, double t_cap, double dt0)
{
    const double cap = 1e12 * scale;
    namespace odeint = boost::numeric::odeint;
    const auto rhs = [k, c](const OdeState& x, OdeState& dxdt, double /*t*/) { dxdt[0] = k * (x[0] * x[0] - c); };
    auto stepper = odeint::make_dense_output(1e-14 * scale, 1e-13, odeint::runge_kutta_dopri5<OdeState>());
    stepper.initialize(OdeState{F0}, 0.0, dt0);
    while (stepper.current_time() < t_cap) {
        const auto [t_prev, t_now] = stepper.do_step(rhs);
        if (!std::isfinite(stepper.current_state()[0]) || stepper.current_state()[0] > cap) {
            double lo = t_prev, hi = t_now;
            OdeState x{};
            for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                stepper.calc_state(mid, x);
                if (std::isfinite(x[0]) && x[0] <= cap)
                    lo = mid;
                else
                    hi = mid;
            }
            return hi;
        }
    }
    return std::nullopt;
}

} // namespace

BlowupResult blowup_oracle(double F0, double Q0, const CriteriaInputs& inp)
{
    const double aq = std::abs(inp.q);
    const double eps = inp.epsilon;
    const double k = (aq + 1.0) / (aq * std::pow(eps, inp.q) * inp.m);
    const bool zero = threshold_is_zero(inp, Q0);
    const double R0 = zero ? 0.0 : std::sqrt(std::abs(Q0));
    const double A = aq * std::pow(eps, inp.q - 1.0) * R0;
    const double lambda = k * A;
    const double c = zero ? 0.0 : (Q0 > 0.0 ? A * A : -A * A);

    BlowupResult r;
    if (zero) {
        if (F0 > 0.0)
            r.closed_form_T = 1.0 / (k * F0);
    } else if (Q0 > 0.0) {
        if (F0 > A) {
            const double K = (F0 - A) / (F0 + A);
            r.closed_form_T = std::log(1.0 / K) / (2.0 * lambda);
            r.printed_T1 = std::log(1.0 / K) / lambda;
        }
    } else {
        r.closed_form_T = (0.5 * std::numbers::pi - std::atan(F0 / A)) / lambda;
    }

    const double scale = std::max(std::abs(F0), A);
    if (scale > 0.0) {
        const double rate = k * scale;
        r.numeric_T = integrate_blowup(F0, k, c, scale, 1e3 / rate, 1e-4 / rate);
    }
    return r;
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::consistent_hit:
        return "consistent_hit";
    case Verdict::consistent_no_claim:
        return "consistent_no_claim";
    case Verdict::smoothness_lost:
        return "smoothness_lost";
    case Verdict::inconclusive_e_drift:
        return "inconclusive_e_drift";
    case Verdict::violation:
        return "VIOLATION";
    }
    return "unknown";
}

std::size_t TheoremReport::failed_checks() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

namespace {

struct ScenarioStart {
    BuiltFlow built;
    MaterialVolume vol;
    FunctionalSample s0;
    CriteriaReport criteria;
};

ScenarioStart prepare(const ScenarioConfig& cfg)
{
    BuiltFlow built = build_flow(cfg);
    if (!built.flow.window().contains(0.0) || !built.flow.window().contains(cfg.T))
        throw ConfigError("key 'criteria.T': horizon lies outside the flow's time window");
    const MaterialVolume vol = init_volume(cfg.volume, built.flow, {cfg.x0, cfg.epsilon}, 0.0);
    const FunctionalSample s0 = sample(built.flow, vol, PhiSpec::power(cfg.q), cfg.epsilon, cfg.floor);

    CriteriaInputs inp;
    inp.q = cfg.q;
    inp.gamma = cfg.gamma;
    inp.n = cfg.dimension;
    inp.s0 = cfg.s0.value_or(built.flow.entropy_floor());
    inp.m = s0.m;
    inp.E = s0.E;
    inp.M = cfg.M;
    inp.epsilon = cfg.epsilon;
    inp.T = cfg.T;
    inp.G0 = s0.G;
    inp.cond10 = condition10(vol, built.flow, cfg.q);
    inp.d_init = boundary_distance(vol);
    CriteriaReport criteria = evaluate_criteria(inp);
    return {std::move(built), vol, s0, std::move(criteria)};
}

} // namespace

CriteriaReport scenario_criteria(const ScenarioConfig& cfg)
{
    return prepare(cfg).criteria;
}

TheoremReport run_theorem_scenario(const ScenarioConfig& cfg)
{
    ScenarioStart init = prepare(cfg);
    const FlowField& flow = init.built.flow;
    const PhiSpec phi = PhiSpec::power(cfg.q);
    const CriteriaReport& cr = init.criteria;

    TheoremReport rep;
    rep.name = cfg.name;
    rep.criteria = cr;
    rep.cond10_value = cr.inputs.cond10;
    rep.cond10_holds = cr.cond10_holds;
    rep.horizon = cfg.T;
    rep.F0 = init.s0.F;
    rep.comparison = blowup_oracle(init.s0.F, cr.Q0, cr.inputs);
    rep.smooth = init.built.smooth;
    rep.smoothness_message = init.built.message;

    const double E0 = init.s0.E;
    std::vector<FunctionalSample> uniform; // samples on the stride grid, dist >= eps
    bool uniform_open = true;

    const auto record = [&](const FunctionalSample& s, double dist, bool on_grid) {
        CriteriaInputs live = cr.inputs;
        live.m = s.m;
        live.E = s.E;
        rep.series.push_back({s, dist, threshold_quantity(live, cr.constants.C, s.G)});
        rep.E_drift = std::max(rep.E_drift, std::abs(s.E - E0) / std::abs(E0));
        rep.reg_max = std::max(rep.reg_max, std::abs(s.reg));
        for (auto& c : check_bounds_chain(s, dist, cfg.q, cfg.epsilon))
            rep.checks.push_back(std::move(c));
        if (on_grid && dist >= cfg.epsilon && uniform_open)
            uniform.push_back(s);
        else
            uniform_open = false;
    };

    MaterialVolume vol = init.vol;
    record(init.s0, boundary_distance(vol), true);

    const double dt = cfg.dt;
    const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.T / dt - 1e-9)));
    for (long step = 1; step <= steps; ++step) {
        const double t_next = std::min(static_cast<double>(step) * dt, cfg.T);
        const MaterialVolume prev = vol;
        vol = advect(prev, flow, t_next, dt);
        if (cfg.resample && vol.dimension == 2)
            vol = resample_markers(vol);
        const double dist = boundary_distance(vol);

        if (dist <= cfg.epsilon) {
            // Bisect on the marker trajectories between the two samples.
            double lo = prev.time, hi = t_next;
            MaterialVolume markers = prev;
            markers.nodes.clear();
            markers.mass.clear();
            markers.rho0.clear();
            while (hi - lo > dt / 100.0) {
                const double mid = 0.5 * (lo + hi);
                const MaterialVolume probe = advect_boundary(markers, flow, mid, mid - markers.time);
                if (boundary_distance(probe) <= cfg.epsilon)
                    hi = mid;
                else
                    lo = mid;
            }
            rep.hit_time = hi;
            rep.end_time = t_next;
            try {
                record(sample(flow, vol, phi, cfg.epsilon, cfg.floor), dist, false);
            } catch (const AttainedPoint&) {
                rep.attained_x0 = true;
            }
            break;
        }

        const bool on_grid = step % cfg.stride == 0 && t_next == static_cast<double>(step) * dt;
        if (on_grid || step == steps) {
            try {
                record(sample(flow, vol, phi, cfg.epsilon, cfg.floor), dist, on_grid);
            } catch (const AttainedPoint&) {
                rep.attained_x0 = true;
                rep.hit_time = t_next;
                rep.end_time = t_next;
                break;
            }
        }
        rep.end_time = t_next;
    }

    if (uniform.size() >= 3)
        for (auto& c : check_inequality17(uniform, cr.inputs, cr.constants.C))
            rep.checks.push_back(std::move(c));

    if (!rep.smooth)
        rep.verdict = Verdict::smoothness_lost;
    else if (rep.hit_time)
        rep.verdict = Verdict::consistent_hit;
    else if (!(rep.cond10_holds && rep.reg_max <= cfg.M))
        rep.verdict = Verdict::consistent_no_claim;
    else if (rep.E_drift > 0.01)
        rep.verdict = Verdict::inconclusive_e_drift;
    else
        rep.verdict = Verdict::violation;
    return rep;
}

std::size_t VerifyReport::total() const
{
    std::size_t n = 0;
    for (const auto& s : sections)
        n += s.checks.size();
    return n;
}

std::size_t VerifyReport::failed() const
{
    std::size_t n = 0;
    for (const auto& s : sections)
        for (const auto& c : s.checks)
            n += c.passed ? 0 : 1;
    return n;
}

std::vector<CheckReport> random_lemma2_cases(int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<CheckReport> out;
    const double gamma = 1.4;
    for (int i = 0; i < count; ++i) {
        // Smooth velocity: affine part plus one Fourier mode per component.
        std::array<double, 6> a{};
        for (auto& v : a)
            v = uniform(rng, -1.0, 1.0);
        const double kx = uniform(rng, 0.5, 2.0), ky = uniform(rng, 0.5, 2.0), amp = uniform(rng, 0.0, 1.0);
        const double rho_amp = uniform(rng, 0.0, 0.5);
        auto fn = [=](double, const Vec& x) {
            const Vec v{a[0] + a[1] * x[0] + a[2] * x[1] + amp * std::sin(kx * x[1]),
                        a[3] + a[4] * x[0] + a[5] * x[1] + amp * std::cos(ky * x[0]), 0.0};
            const double rho = 1.0 + rho_amp * std::sin(kx * x[0] + ky * x[1]);
            return FluidState::from_pressure(rho, v, 1.0, gamma);
        };
        const FlowField flow = make_synthetic_flow(2, gamma, 0.0, fn);

        const double d = uniform(rng, 1.5, 4.0);
        const double ang = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        VolumeShapeSpec spec;
        spec.shape = ShapeKind::ball;
        spec.dimension = 2;
        spec.center = {d * std::cos(ang), d * std::sin(ang), 0.0};
        spec.radius = uniform(rng, 0.3, std::min(1.0, d - 0.5));
        spec.markers = 64;
        spec.quadrature.radial = 8;
        spec.quadrature.angular = 32;
        const MaterialVolume vol = init_volume(spec, flow, {Vec{}, 0.0}, 0.0);

        const int kind = i % 3;
        const double qexp = uniform(rng, -12.0, -1.0);
        const double c = uniform(rng, 0.2, 2.0);
        PhiSpec phi = kind == 0 ? PhiSpec::power(qexp)
                      : kind == 1
                          ? PhiSpec::generic([c](double r) { return std::exp(-c * r); },
                                             [c](double r) { return -c * std::exp(-c * r); },
                                             [c](double r) { return c * c * std::exp(-c * r); }, "exp")
                          : PhiSpec::generic([c](double r) { return std::cosh(c * r); },
                                             [c](double r) { return c * std::sinh(c * r); },
                                             [c](double r) { return c * c * std::cosh(c * r); }, "cosh");

        const FunctionalSample s = sample(flow, vol, phi, 0.0);
        const double F2 = s.F * s.F;
        const double generic_rhs = holder_ratio_sup(vol, phi) * s.G * s.I1;
        out.push_back(make_check("lemma2_generic[" + phi.name() + "]", F2, generic_rhs,
                                 1e-10 * largest({F2, generic_rhs}), static_cast<double>(i)));
        if (kind == 0) {
            const double aq = std::abs(qexp);
            const double sharp = aq / (aq + 1.0) * s.G * s.I1;
            out.push_back(make_check("lemma2_sharp", F2, sharp, 1e-10 * largest({F2, sharp}), static_cast<double>(i)));
        }
    }
    return out;
}

namespace {

CheckReport oracle_check(const std::string& name, const BlowupResult& r, double index)
{
    if (r.closed_form_T.has_value() != r.numeric_T.has_value())
        return make_check(name + "_presence", 1.0, 0.0, 0.0, index);
    if (!r.closed_form_T)
        return make_check(name + "_none", 0.0, 0.0, 0.0, index);
    const double gap = std::abs(*r.closed_form_T - *r.numeric_T) / *r.closed_form_T;
    return make_check(name, gap, 1e-6, 0.0, index);
}

} // namespace

std::vector<CheckReport> random_oracle_cases(int count, std::uint64_t seed)
{
    std::vector<CheckReport> out;

    CriteriaInputs spot;
    spot.q = -8.0;
    spot.epsilon = 1.0;
    spot.m = 1.0;
    spot.E = 1.0;
    const BlowupResult t2 = blowup_oracle(1.0, 0.0, spot);
    out.push_back(make_check("oracle_spot_T2_closed", std::abs(t2.closed_form_T.value_or(0.0) - 8.0 / 9.0), 0.0,
                             1e-12, 0.0));
    out.push_back(oracle_check("oracle_spot_T2", t2, 0.0));
    const BlowupResult t3 = blowup_oracle(0.0, -1.0, spot);
    out.push_back(make_check("oracle_spot_T3_closed",
                             std::abs(t3.closed_form_T.value_or(0.0) - std::numbers::pi / 18.0), 0.0, 1e-12, 0.0));
    out.push_back(oracle_check("oracle_spot_T3", t3, 0.0));

    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        CriteriaInputs inp;
        inp.q = uniform(rng, -12.0, -7.2);
        inp.epsilon = uniform(rng, 0.4, 1.5);
        inp.m = uniform(rng, 0.5, 2.0);
        inp.E = 1.0;
        const double aq = std::abs(inp.q);
        const double lead = 2.0 * inp.m * inp.E / (1.0 + aq);
        const double mag = lead * uniform(rng, 0.05, 2.0);
        const double u = uniform01(rng);
        const int kind = i % 3;
        double Q0 = 0.0, F0 = 0.0;
        if (kind == 0) {
            Q0 = mag;
            F0 = aq * std::pow(inp.epsilon, inp.q - 1.0) * std::sqrt(Q0) * (1.01 + 3.0 * u);
        } else if (kind == 1) {
            F0 = aq * std::pow(inp.epsilon, inp.q - 1.0) * std::sqrt(lead) * (0.1 + 3.0 * u);
        } else {
            Q0 = -mag;
            F0 = aq * std::pow(inp.epsilon, inp.q - 1.0) * std::sqrt(mag) * (-1.0 + 4.0 * u);
        }
        const char* names[] = {"oracle_T1", "oracle_T2", "oracle_T3"};
        out.push_back(oracle_check(names[kind], blowup_oracle(F0, Q0, inp), static_cast<double>(i)));
    }
    return out;
}

VerifyReport run_verify_suite(const ScenarioConfig& cfg, std::uint64_t seed)
{
    VerifyReport rep;
    rep.name = cfg.name;
    rep.seed = seed;

    const BuiltFlow built = build_flow(cfg);
    const FlowField& flow = built.flow;
    const PhiSpec phi = PhiSpec::power(cfg.q);
    const LemmaTolerances tol = cfg.flow_kind == FlowKind::grid ? grid_tolerances() : LemmaTolerances{};

    // The scenario runs first so that default lemma times stay before the
    // hit: past it the volume may sweep over x0.
    const TheoremReport th = run_theorem_scenario(cfg);
    const double horizon = th.hit_time.value_or(cfg.T);

    std::vector<double> times = cfg.verify_times;
    if (times.empty())
        for (int i = 1; i <= 10; ++i)
            times.push_back(horizon * i / 10.0 - (i == 10 ? cfg.verify_h : 0.0));
    std::sort(times.begin(), times.end());

    VerifySection lemmas{"lemma_suite", {}};
    MaterialVolume vol = init_volume(cfg.volume, flow, {cfg.x0, cfg.epsilon}, 0.0);
    for (double t : times) {
        vol = advance_to(vol, flow, t - cfg.verify_h, cfg.dt);
        for (auto& c : check_lemma_suite(flow, vol, phi, t, cfg.verify_h, cfg.epsilon, cfg.dt, tol))
            lemmas.checks.push_back(std::move(c));
    }
    rep.sections.push_back(std::move(lemmas));

    VerifySection scenario{"scenario", th.checks};
    scenario.checks.push_back(make_check("verdict_not_violation", th.verdict == Verdict::violation ? 1.0 : 0.0, 0.0,
                                         0.0, th.end_time));
    rep.sections.push_back(std::move(scenario));

    rep.sections.push_back({"lemma2_random", random_lemma2_cases(cfg.lemma2_cases, seed)});
    rep.sections.push_back({"blowup_oracle", random_oracle_cases(cfg.oracle_cases, seed ^ 0x9E3779B97F4A7C15ULL)});
    return rep;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg)
{
    const std::vector<double> qs = cfg.sweep_q.empty() ? std::vector<double>{cfg.q} : cfg.sweep_q;
    const std::vector<double> es = cfg.sweep_epsilon.empty() ? std::vector<double>{cfg.epsilon} : cfg.sweep_epsilon;

    std::vector<std::future<SweepRow>> jobs;
    for (double q : qs)
        for (double e : es)
            jobs.push_back(std::async(std::launch::async, [&cfg, q, e] {
                SweepRow row;
                row.q = q;
                row.epsilon = e;
                ScenarioConfig point = cfg;
                point.q = q;
                point.epsilon = e;
                try {
                    row.criteria = scenario_criteria(point);
                    row.valid = true;
                } catch (const InvalidArgument& ex) {
                    row.error = ex.what();
                } catch (const GeometryError& ex) {
                    row.error = ex.what();
                } catch (const DomainError& ex) {
                    row.error = ex.what();
                }
                return row;
            }));

    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& j : jobs)
        rows.push_back(j.get());
    return rows;
}

} // namespace lagvol
