#pragma once

#include "lagvol/config.hpp"
#include "lagvol/criteria.hpp"
#include "lagvol/flowfield.hpp"
#include "lagvol/functionals.hpp"
#include "lagvol/matvol.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lagvol {

/// One checked inequality. Oriented so that slack = rhs - lhs >= 0 means the
/// inequality holds; equalities are checked as |difference| <= 0.
struct CheckReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double t = 0.0;
};

/// passed = slack >= -tolerance.
CheckReport make_check(std::string name, double lhs, double rhs, double tolerance, double t);

struct LemmaTolerances {
    double first = 1e-5;  // relative, first-derivative identity
    double second = 1e-3; // relative, second-derivative decomposition
    double inequality = 1e-10;
};

/// Looser tolerances for interpolated grid flows, whose time interpolation
/// is only piecewise smooth across snapshots.
LemmaTolerances grid_tolerances();

/// Derivative identities and moment inequalities at time t.
///
/// `vol` must sit at a time <= t - h; it is advected to t - h, t and t + h
/// with RK4 steps no longer than `dt`. Reports, in order:
///   lemma1_first        |central dG/dt - F|              <= first * max(|F|, 1e-12)
///   lemma1_second       |central d2G/dt2 - sum I|        <= second * sum |I|
///   lemma2_generic      F^2 <= sup(phi'^2/(phi'' phi)) G I1
///   lemma2_sharp        F^2 <= |q|/(|q|+1) G I1          (power weights)
///   lemma2_printed      F^2 <= (|q|+1)/|q| G I1          (power weights)
///   lemma3              C1 G^gamma eps^-((q+n)(gamma-1)+2) <= int |x|^(q-2) rho^gamma
/// The lemma3 report is skipped for generic weights.
std::vector<CheckReport> check_lemma_suite(const FlowField& flow, const MaterialVolume& vol, const PhiSpec& phi,
                                           double t, double h, double epsilon, double dt,
                                           const LemmaTolerances& tol = {});

/// dF/dt >= (|q|+1)/(|q| eps^q m) (F^2 - q^2 eps^(2q-2) Q(t)) at every interior
/// sample, with Q(t) evaluated from the live G and E of the sample. dF/dt is a
/// central difference; the tolerance is 1e-3 of the largest term plus a
/// third-difference truncation estimate. Needs >= 3 uniformly spaced samples.
std::vector<CheckReport> check_inequality17(const std::vector<FunctionalSample>& series,
                                            const CriteriaInputs& inp, double C);

/// Per-sample bounds valid while dist >= eps:
///   bound21   |F|  <= |q| eps^(q-1) sqrt(2 m E)
///   bound_I2  |I2| <= 2 |q| eps^(q-2) E
///   bound_I4  |I4| <= |q| eps^(q-1) |reg|
///   bound_G   G    <= eps^q m
/// Returns nothing when dist < eps.
std::vector<CheckReport> check_bounds_chain(const FunctionalSample& s, double dist, double q, double epsilon);

struct BlowupResult {
    std::optional<double> closed_form_T;
    std::optional<double> numeric_T;
    // ln(1/K)/lambda for the positive case: a single-rate upper bound, twice the exact time.
    std::optional<double> printed_T1;
};

/// Blow-up time of dF/dt = k (F^2 - q^2 eps^(2q-2) Q0), k = (|q|+1)/(|q| eps^q m).
/// The numeric side integrates the ODE with an adaptive Dormand-Prince
/// stepper until F exceeds 1e12 times the initial scale.
BlowupResult blowup_oracle(double F0, double Q0, const CriteriaInputs& inp);

enum class Verdict { consistent_hit, consistent_no_claim, smoothness_lost, inconclusive_e_drift, violation };

const char* to_string(Verdict v);

/// One line of the time series: the functionals, the boundary distance and
/// the live threshold quantity.
struct SeriesRow {
    FunctionalSample s;
    double dist = 0.0;
    double Qq = 0.0;
};

struct TheoremReport {
    std::string name;
    CriteriaReport criteria;
    double cond10_value = 0.0;
    bool cond10_holds = false;
    std::optional<double> hit_time;
    bool attained_x0 = false;
    double horizon = 0.0;
    double end_time = 0.0;
    double E_drift = 0.0;
    double reg_max = 0.0;
    double F0 = 0.0;
    BlowupResult comparison;
    bool smooth = true;
    std::string smoothness_message;
    Verdict verdict = Verdict::consistent_no_claim;
    std::vector<SeriesRow> series;
    std::vector<CheckReport> checks;

    std::size_t failed_checks() const;
};

/// Initial-time criteria for a scenario (builds the flow and the volume).
CriteriaReport scenario_criteria(const ScenarioConfig& cfg);

/// Advances the volume to min(T, hit time), sampling every `stride` steps,
/// and classifies the outcome against the theorem.
TheoremReport run_theorem_scenario(const ScenarioConfig& cfg);

struct VerifySection {
    std::string name;
    std::vector<CheckReport> checks;
};

struct VerifyReport {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<VerifySection> sections;

    std::size_t total() const;
    std::size_t failed() const;
};

/// Lemma suite at the configured times (default: ten times spread up to
/// min(T, hit time)), the comparison inequality and the bounds chain
/// along the scenario, randomized moment-inequality cases and randomized blow-up oracle
/// cases. Identical config and seed give identical reports.
VerifyReport run_verify_suite(const ScenarioConfig& cfg, std::uint64_t seed);

/// Randomized moment-inequality (lemma2) cases on disks in smooth synthetic velocity fields.
std::vector<CheckReport> random_lemma2_cases(int count, std::uint64_t seed);

/// Randomized admissible blow-up cases, closed form vs integration, plus the
/// spot values 8/9 (Q0 = 0) and pi/18 (Q0 < 0).
std::vector<CheckReport> random_oracle_cases(int count, std::uint64_t seed);

struct SweepRow {
    double q = 0.0;
    double epsilon = 0.0;
    bool valid = false;
    std::string error; // precondition message when not valid
    CriteriaReport criteria;
};

/// Initial-time criteria over the declared (q, eps) grid, q-major order.
/// Rows are independent and evaluated concurrently; the output order is
/// fixed. A grid point violating a precondition yields an invalid row.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg);

} // namespace lagvol
