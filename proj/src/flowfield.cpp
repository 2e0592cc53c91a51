#include "lagvol/flowfield.hpp"

#include "lagvol/errors.hpp"

#include <cmath>
#include <sstream>

namespace lagvol {

FluidState FluidState::from_entropy(double rho, const Vec& vel, double entropy, double gamma)
{
    if (!(rho > 0.0))
        throw InvalidArgument("fluid state: density must be positive");
    return {rho, vel, entropy, std::pow(rho, gamma) * std::exp(entropy)};
}

FluidState FluidState::from_pressure(double rho, const Vec& vel, double pressure, double gamma)
{
    if (!(rho > 0.0) || !(pressure > 0.0))
        throw InvalidArgument("fluid state: density and pressure must be positive");
    return {rho, vel, std::log(pressure) - gamma * std::log(rho), pressure};
}

const char* to_string(FlowKind kind)
{
    switch (kind) {
    case FlowKind::constant: return "constant";
    case FlowKind::expansion: return "expansion";
    case FlowKind::grid: return "grid";
    case FlowKind::synthetic: return "synthetic";
    }
    return "unknown";
}

FlowField::FlowField(FlowKind kind, int dimension, double gamma, double entropy_floor,
                     std::vector<double> parameters, std::shared_ptr<const FlowModel> model)
    : kind_(kind), dimension_(dimension), gamma_(gamma), entropy_floor_(entropy_floor),
      parameters_(std::move(parameters)), model_(std::move(model))
{
    if (dimension_ != 2 && dimension_ != 3)
        throw InvalidArgument("flow dimension must be 2 or 3");
    if (!(gamma_ > 1.0))
        throw InvalidArgument("adiabatic exponent gamma must exceed 1");
    if (!model_)
        throw InvalidArgument("flow model is null");
}

FluidState FlowField::eval(double t, const Vec& x) const
{
    if (!model_->contains(t, x)) {
        std::ostringstream os;
        os << to_string(kind_) << " flow queried outside its domain at t=" << t << " x=(" << x[0] << ", "
           << x[1] << ", " << x[2] << ")";
        throw DomainError(os.str());
    }
    return model_->state(t, x);
}

namespace {

class ConstantModel final : public FlowModel {
public:
    explicit ConstantModel(FluidState s) : state_(s) {}
    FluidState state(double, const Vec&) const override { return state_; }
    bool contains(double t, const Vec&) const override { return std::isfinite(t); }
    TimeWindow window() const override { return {}; }

private:
    FluidState state_;
};

class ExpansionModel final : public FlowModel {
public:
    ExpansionModel(int n, double gamma, double rho0, double s0, double t_c)
        : n_(n), gamma_(gamma), rho0_(rho0), s0_(s0), t_c_(t_c)
    {
    }

    FluidState state(double t, const Vec& x) const override
    {
        const double tau = t + t_c_;
        const double rho = rho0_ * std::pow(t_c_ / tau, n_);
        return FluidState::from_entropy(rho, (1.0 / tau) * x, s0_, gamma_);
    }

    bool contains(double t, const Vec&) const override
    {
        // t + t_c keeps the sign of t_c
        return std::isfinite(t) && (t + t_c_) * t_c_ > 0.0;
    }

    TimeWindow window() const override
    {
        TimeWindow w;
        if (t_c_ > 0.0)
            w.begin = std::nextafter(-t_c_, 0.0);
        else
            w.end = std::nextafter(-t_c_, 0.0);
        return w;
    }

private:
    int n_;
    double gamma_, rho0_, s0_, t_c_;
};

class SyntheticModel final : public FlowModel {
public:
    SyntheticModel(StateFunction fn, TimeWindow w) : fn_(std::move(fn)), window_(w) {}
    FluidState state(double t, const Vec& x) const override { return fn_(t, x); }
    bool contains(double t, const Vec&) const override { return window_.contains(t); }
    TimeWindow window() const override { return window_; }

private:
    StateFunction fn_;
    TimeWindow window_;
};

} // namespace

FlowField make_constant_flow(int dimension, double gamma, double rho0, const Vec& vel0, double p0)
{
    if (!(rho0 > 0.0) || !(p0 > 0.0))
        throw InvalidArgument("constant flow needs rho0 > 0 and P0 > 0");
    if (!(gamma > 1.0))
        throw InvalidArgument("adiabatic exponent gamma must exceed 1");
    Vec v = vel0;
    if (dimension == 2)
        v[2] = 0.0;
    const FluidState s = FluidState::from_entropy(rho0, v, std::log(p0 / std::pow(rho0, gamma)), gamma);
    std::vector<double> params{rho0};
    for (int i = 0; i < dimension; ++i)
        params.push_back(v[i]);
    params.push_back(p0);
    return FlowField(FlowKind::constant, dimension, gamma, s.entropy, std::move(params),
                     std::make_shared<ConstantModel>(s));
}

FlowField make_expansion_flow(int dimension, double gamma, double rho0, double s0, double t_c)
{
    if (!(rho0 > 0.0))
        throw InvalidArgument("expansion flow needs rho0 > 0");
    if (t_c == 0.0 || !std::isfinite(t_c))
        throw InvalidArgument("expansion flow needs a finite non-zero t_c");
    if (!(gamma > 1.0))
        throw InvalidArgument("adiabatic exponent gamma must exceed 1");
    return FlowField(FlowKind::expansion, dimension, gamma, s0, {rho0, s0, t_c},
                     std::make_shared<ExpansionModel>(dimension, gamma, rho0, s0, t_c));
}

FlowField make_synthetic_flow(int dimension, double gamma, double entropy_floor, StateFunction fn,
                              TimeWindow window)
{
    if (!fn)
        throw InvalidArgument("synthetic flow needs a state function");
    return FlowField(FlowKind::synthetic, dimension, gamma, entropy_floor, {},
                     std::make_shared<SyntheticModel>(std::move(fn), window));
}

FlowField make_analytic_flow(const AnalyticFlowSpec& spec)
{
    const int n = spec.dimension;
    if (n != 2 && n != 3)
        throw InvalidArgument("flow dimension must be 2 or 3");
    const auto& p = spec.parameters;
    switch (spec.kind) {
    case FlowKind::constant: {
        if (p.size() != static_cast<std::size_t>(n) + 2)
            throw InvalidArgument("constant flow expects (rho0, V0..., P0)");
        Vec v{};
        for (int i = 0; i < n; ++i)
            v[i] = p[1 + i];
        return make_constant_flow(n, spec.gamma, p[0], v, p[n + 1]);
    }
    case FlowKind::expansion:
        if (p.size() != 3)
            throw InvalidArgument("expansion flow expects (rho0, S0, t_c)");
        return make_expansion_flow(n, spec.gamma, p[0], p[1], p[2]);
    default:
        throw InvalidArgument(std::string("not an analytic flow kind: ") + to_string(spec.kind));
    }
}

FluidState eval_state(const FlowField& flow, double t, const Vec& x)
{
    return flow.eval(t, x);
}

std::vector<double> euler_residual(const FlowField& flow, double t, const Vec& x, double h)
{
    if (!(h > 0.0))
        throw InvalidArgument("euler_residual: h must be positive");
    const int n = flow.dimension();
    const double gamma = flow.gamma();

    auto probe = [&](double tt, const Vec& xx) {
        if (!flow.contains(tt, xx))
            throw DomainError("euler_residual: difference stencil leaves the flow domain");
        return flow.eval(tt, xx);
    };

    const FluidState c = probe(t, x);
    const FluidState tp = probe(t + h, x);
    const FluidState tm = probe(t - h, x);

    // d/dt of V, rho, P
    Vec dv_dt = (1.0 / (2.0 * h)) * (tp.vel - tm.vel);
    const double drho_dt = (tp.rho - tm.rho) / (2.0 * h);
    const double dp_dt = (tp.pressure - tm.pressure) / (2.0 * h);

    // Spatial derivatives: grad_j of V_i, rho V_j, P.
    double dv[3][3] = {};
    double div_v = 0.0;
    double div_mass_flux = 0.0;
    Vec grad_p{};
    for (int j = 0; j < n; ++j) {
        Vec xp = x;
        Vec xm = x;
        xp[j] += h;
        xm[j] -= h;
        const FluidState sp = probe(t, xp);
        const FluidState sm = probe(t, xm);
        for (int i = 0; i < n; ++i)
            dv[i][j] = (sp.vel[i] - sm.vel[i]) / (2.0 * h);
        div_v += dv[j][j];
        div_mass_flux += (sp.rho * sp.vel[j] - sm.rho * sm.vel[j]) / (2.0 * h);
        grad_p[j] = (sp.pressure - sm.pressure) / (2.0 * h);
    }

    std::vector<double> r(n + 2, 0.0);
    for (int i = 0; i < n; ++i) {
        double adv = 0.0;
        for (int j = 0; j < n; ++j)
            adv += c.vel[j] * dv[i][j];
        r[i] = c.rho * (dv_dt[i] + adv) + grad_p[i];
    }
    r[n] = drho_dt + div_mass_flux;
    double v_grad_p = 0.0;
    for (int j = 0; j < n; ++j)
        v_grad_p += c.vel[j] * grad_p[j];
    r[n + 1] = dp_dt + v_grad_p + gamma * c.pressure * div_v;
    return r;
}

} // namespace lagvol
