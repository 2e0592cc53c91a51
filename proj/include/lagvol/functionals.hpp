#pragma once

#include "lagvol/flowfield.hpp"
#include "lagvol/matvol.hpp"

#include <functional>
#include <optional>
#include <string>

namespace lagvol {

/// Radial weight phi(|x - x0|) with its first two derivatives. The power law
/// |x|^q (q < 0) is the moment weight; generic profiles are for the generic
/// identities and the Hoelder-type inequality.
class PhiSpec {
public:
    using Profile = std::function<double(double)>;

    static PhiSpec power(double q);
    static PhiSpec generic(Profile phi, Profile d1, Profile d2, std::string name = "generic");

    double value(double r) const { return phi_(r); }
    double d1(double r) const { return d1_(r); }
    double d2(double r) const { return d2_(r); }

    /// The exponent q for power-law weights.
    std::optional<double> exponent() const { return q_; }
    const std::string& name() const { return name_; }

private:
    PhiSpec() = default;
    Profile phi_, d1_, d2_;
    std::optional<double> q_;
    std::string name_;
};

/// All scalar functionals at one instant. `reg` is the signed boundary
/// integral of (x/|x|, N) P; regularity verdicts use |reg|.
struct FunctionalSample {
    double t = 0.0;
    double m = 0.0;
    double E = 0.0;
    double G = 0.0;
    double F = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double I3 = 0.0;
    double I4 = 0.0;
    double reg = 0.0;
    double q = 0.0;
    double epsilon = 0.0;
};

/// |sigma|^2 = sum over i > j of (V_i x_j - V_j x_i)^2.
double sigma_norm2(const Vec& vel, const Vec& x, int dimension);

constexpr double default_singularity_floor = 1e-9;

/// Evaluates m, E, G, F, I1..I4 and reg on the volume at vol.time. All
/// radial quantities use coordinates relative to vol.x0. Throws AttainedPoint
/// when a node or boundary element sits within `floor` of x0.
FunctionalSample sample(const FlowField& flow, const MaterialVolume& vol, const PhiSpec& phi, double epsilon,
                        double floor = default_singularity_floor);

struct Lemma1Rhs {
    double dG_dt = 0.0;
    double d2G_dt2 = 0.0;
};

/// The integral forms of dG/dt and d2G/dt2 (= I1 + I2 + I3 + I4) for any
/// twice-differentiable radial weight.
Lemma1Rhs generic_lemma1_rhs(const FlowField& flow, const MaterialVolume& vol, const PhiSpec& phi,
                             double floor = default_singularity_floor);

/// G_phi = integral of rho phi(|x - x0|).
double moment(const MaterialVolume& vol, const PhiSpec& phi, double floor = default_singularity_floor);

/// Integral of |x - x0|^(q-2) rho^gamma over the volume.
double weighted_rho_gamma(const FlowField& flow, const MaterialVolume& vol, double q);

/// Sup over the current nodes of phi'^2 / (phi'' phi).
double holder_ratio_sup(const MaterialVolume& vol, const PhiSpec& phi);

} // namespace lagvol
