#include "lagvol/functionals.hpp"

#include "lagvol/errors.hpp"
#include "lagvol/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lagvol {

PhiSpec PhiSpec::power(double q)
{
    if (!(q < 0.0))
        throw InvalidArgument("power-law weight needs q < 0");
    PhiSpec p;
    p.phi_ = [q](double r) { return std::pow(r, q); };
    p.d1_ = [q](double r) { return q * std::pow(r, q - 1.0); };
    p.d2_ = [q](double r) { return q * (q - 1.0) * std::pow(r, q - 2.0); };
    p.q_ = q;
    std::ostringstream os;
    os << "|x|^" << q;
    p.name_ = os.str();
    return p;
}

PhiSpec PhiSpec::generic(Profile phi, Profile d1, Profile d2, std::string name)
{
    if (!phi || !d1 || !d2)
        throw InvalidArgument("generic weight needs phi, phi' and phi''");
    PhiSpec p;
    p.phi_ = std::move(phi);
    p.d1_ = std::move(d1);
    p.d2_ = std::move(d2);
    p.name_ = std::move(name);
    return p;
}

double sigma_norm2(const Vec& vel, const Vec& x, int dimension)
{
    if (dimension != 2 && dimension != 3)
        throw InvalidArgument("sigma_norm2: dimension must be 2 or 3");
    double s = 0.0;
    for (int i = 0; i < dimension; ++i) {
        for (int j = 0; j < i; ++j) {
            const double c = vel[i] * x[j] - vel[j] * x[i];
            s += c * c;
        }
    }
    return s;
}

namespace {

double checked_radius(const Vec& y, double floor)
{
    const double r = norm(y);
    if (!(r >= floor)) {
        std::ostringstream os;
        os << "volume reached x0 (|x - x0| = " << r << " below floor " << floor << ")";
        throw AttainedPoint(os.str());
    }
    return r;
}

} // namespace

FunctionalSample sample(const FlowField& flow, const MaterialVolume& vol, const PhiSpec& phi, double epsilon,
                        double floor)
{
    const int n = vol.dimension;
    const double gamma = flow.gamma();
    const std::size_t count = vol.nodes.size();

    std::vector<double> tm(count), te(count), tg(count), tf(count), t1(count), t2(count), t3(count);
    for (std::size_t i = 0; i < count; ++i) {
        const FluidState s = flow.eval(vol.time, vol.nodes[i]);
        if (!(s.rho > 0.0))
            throw DomainError("sample: non-positive density at a node");
        const Vec y = vol.nodes[i] - vol.x0;
        const double r = checked_radius(y, floor);
        const double w = vol.mass[i];
        const double vol_w = w / s.rho;
        const double p0 = phi.value(r), p1 = phi.d1(r), p2 = phi.d2(r);
        const double vx = dot(s.vel, y);

        tm[i] = w;
        te[i] = w * 0.5 * norm2(s.vel) + vol_w * s.pressure / (gamma - 1.0);
        tg[i] = w * p0;
        tf[i] = w * (p1 / r) * vx;
        t1[i] = w * (p2 / (r * r)) * vx * vx;
        t2[i] = w * (p1 / (r * r * r)) * sigma_norm2(s.vel, y, n);
        t3[i] = vol_w * (p2 + (n - 1) * p1 / r) * s.pressure;
    }

    const auto elems = boundary_elements(vol);
    std::vector<double> t4(elems.size()), tr(elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) {
        const auto& e = elems[k];
        const FluidState s = flow.eval(vol.time, e.midpoint);
        const Vec y = e.midpoint - vol.x0;
        const double r = checked_radius(y, floor);
        const double xn = dot(y, e.normal);
        t4[k] = -(phi.d1(r) / r) * xn * s.pressure * e.measure;
        tr[k] = (xn / r) * s.pressure * e.measure;
    }

    FunctionalSample out;
    out.t = vol.time;
    out.m = pairwise_sum(tm);
    out.E = pairwise_sum(te);
    out.G = pairwise_sum(tg);
    out.F = pairwise_sum(tf);
    out.I1 = pairwise_sum(t1);
    out.I2 = pairwise_sum(t2);
    out.I3 = pairwise_sum(t3);
    out.I4 = pairwise_sum(t4);
    out.reg = pairwise_sum(tr);
    out.q = phi.exponent().value_or(std::numeric_limits<double>::quiet_NaN());
    out.epsilon = epsilon;
    return out;
}

Lemma1Rhs generic_lemma1_rhs(const FlowField& flow, const MaterialVolume& vol, const PhiSpec& phi, double floor)
{
    const FunctionalSample s = sample(flow, vol, phi, 0.0, floor);
    return {s.F, s.I1 + s.I2 + s.I3 + s.I4};
}

double moment(const MaterialVolume& vol, const PhiSpec& phi, double floor)
{
    return volume_integral_mass(vol, [&](const Vec& x) { return phi.value(checked_radius(x - vol.x0, floor)); });
}

double weighted_rho_gamma(const FlowField& flow, const MaterialVolume& vol, double q)
{
    const double gamma = flow.gamma();
    return volume_integral_plain(
        vol,
        [&](const Vec& x, const FluidState& s) {
            const double r = checked_radius(x - vol.x0, default_singularity_floor);
            return std::pow(r, q - 2.0) * std::pow(s.rho, gamma);
        },
        flow);
}

double holder_ratio_sup(const MaterialVolume& vol, const PhiSpec& phi)
{
    double sup = 0.0;
    for (const auto& x : vol.nodes) {
        const double r = checked_radius(x - vol.x0, default_singularity_floor);
        const double d1 = phi.d1(r);
        sup = std::max(sup, d1 * d1 / (phi.d2(r) * phi.value(r)));
    }
    return sup;
}

} // namespace lagvol
