#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagvol/config.hpp"
#include "lagvol/errors.hpp"
#include "lagvol/verify.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace lagvol;
using lagvol::test::rel_close;

namespace {

constexpr double pi = std::numbers::pi;

VolumeShapeSpec disk(Vec c, double r)
{
    VolumeShapeSpec s;
    s.center = c;
    s.radius = r;
    return s;
}

bool all_passed(const std::vector<CheckReport>& v)
{
    for (const auto& c : v)
        if (!c.passed) {
            MESSAGE(c.name << " t=" << c.t << " lhs=" << c.lhs << " rhs=" << c.rhs << " tol=" << c.tolerance);
            return false;
        }
    return true;
}

CriteriaInputs unit_inputs()
{
    CriteriaInputs in;
    in.q = -8;
    in.epsilon = 1;
    in.m = 1;
    in.E = 1;
    return in;
}

ScenarioConfig constant_scenario(double vx)
{
    ScenarioConfig c;
    c.name = vx < 0 ? "inflow" : "recede";
    c.flow_kind = FlowKind::constant;
    c.flow_parameters = {1.0, vx, 0.0, 1.0};
    c.volume = disk({3, 0, 0}, 1);
    c.x0 = {};
    c.epsilon = 0.5;
    c.q = -8;
    c.T = 5;
    c.M = 10;
    c.dt = 1e-3;
    c.stride = 10;
    return c;
}

} // namespace

TEST_CASE("check orientation")
{
    const CheckReport a = make_check("x", 1.0, 2.0, 0.0, 0.5);
    CHECK(a.passed);
    CHECK(a.slack == 1.0);
    CHECK(a.t == 0.5);
    CHECK_FALSE(make_check("x", 2.0, 1.0, 0.5, 0.0).passed);
    CHECK(make_check("x", 2.0, 1.0, 1.0, 0.0).passed);
}

TEST_CASE("lemma suite on the expansion flow")
{
    const FlowField f = make_expansion_flow(2, 1.4, 1.0, 0.0, 1.0);
    const MaterialVolume v = init_volume(disk({3, 0, 0}, 1), f, {{}, 0.5});
    const auto checks = check_lemma_suite(f, v, PhiSpec::power(-8), 0.5, 1e-4, 0.5, 0.01);
    REQUIRE(checks.size() == 6);
    CHECK(checks[0].name == "lemma1_first");
    CHECK(checks[1].name == "lemma1_second");
    CHECK(checks[5].name == "lemma3");
    CHECK(all_passed(checks));
}

TEST_CASE("lemma suite rejects a volume later than the stencil")
{
    const FlowField f = make_expansion_flow(2, 1.4, 1.0, 0.0, 1.0);
    const MaterialVolume v = advect(init_volume(disk({3, 0, 0}, 1), f, {{}, 0.5}), f, 0.6, 0.01);
    CHECK_THROWS_AS(check_lemma_suite(f, v, PhiSpec::power(-8), 0.5, 1e-4, 0.5, 0.01), InvalidArgument);
    const FlowField collapse = make_expansion_flow(2, 1.4, 1.0, 0.0, -1.0);
    const MaterialVolume w = init_volume(disk({3, 0, 0}, 1), collapse, {{}, 0.5});
    CHECK_THROWS_AS(check_lemma_suite(collapse, w, PhiSpec::power(-8), 1.0 - 5e-5, 1e-4, 0.5, 0.01), DomainError);
}

TEST_CASE("radial field makes the first-derivative identity F = qG exact")
{
    const FlowField f = make_synthetic_flow(2, 1.4, 0.0, [](double, const Vec& x) {
        return FluidState::from_pressure(1.0, x, 1.0, 1.4);
    });
    const MaterialVolume v = init_volume(disk({3, 0, 0}, 1), f, {{}, 0.5});
    const auto checks = check_lemma_suite(f, v, PhiSpec::power(-8), 0.1, 1e-4, 0.5, 0.01);
    CHECK(checks[0].passed);
    CHECK(std::abs(checks[0].slack) <= checks[0].tolerance);
}

TEST_CASE("weighted density bound on the unit-density annulus against both closed forms")
{
    const double q = -8, gamma = 1.4, eps = 0.9;
    VolumeShapeSpec an;
    an.shape = ShapeKind::annulus;
    an.inner_radius = 1;
    an.outer_radius = 2;
    const FlowField f = make_constant_flow(2, gamma, 1.0, {}, 1.0);
    const MaterialVolume v = init_volume(an, f, {{}, eps});
    const auto checks = check_lemma_suite(f, v, PhiSpec::power(q), 1e-4, 1e-4, eps, 0.01);
    const CheckReport& l3 = checks.back();
    REQUIRE(l3.name == "lemma3");

    const double lhs_closed = 2 * pi * (1 - std::pow(2.0, q)) / -q;
    const double G_closed = 2 * pi * (1 - std::pow(2.0, q + 2)) / -(q + 2);
    const double rhs_closed = std::pow(2 * pi, -0.4) * std::pow(G_closed, gamma) * std::pow(eps, 0.4);
    CHECK(rel_close(l3.rhs, lhs_closed, 1e-8));
    CHECK(rel_close(l3.lhs, rhs_closed, 1e-8));
    CHECK(lhs_closed >= rhs_closed);
    CHECK(l3.passed);
}

TEST_CASE("comparison inequality: resting volume")
{
    CriteriaInputs in = unit_inputs();
    in.epsilon = 0.5;
    const double C = constants(-8, 1.4, 2, 0.0).C;
    std::vector<FunctionalSample> series;
    for (int k = 0; k < 5; ++k) {
        FunctionalSample s;
        s.t = 0.1 * k;
        s.m = 1;
        s.E = 1;
        s.G = 0.01;
        series.push_back(s);
    }
    const auto checks = check_inequality17(series, in, C);
    CHECK(checks.size() == 3);
    CHECK(all_passed(checks));
    CHECK(threshold_quantity(in, C, 0.01) > 0);
}

TEST_CASE("comparison inequality: injected jitter is detected")
{
    CriteriaInputs in = unit_inputs();
    in.epsilon = 0.5;
    const double C = constants(-8, 1.4, 2, 0.0).C;
    std::vector<FunctionalSample> series;
    for (int k = 0; k < 7; ++k) {
        FunctionalSample s;
        s.t = 0.01 * k;
        s.m = 1;
        s.E = 1;
        s.G = 0.01;
        s.F = (k == 4) ? -1e6 : 0.0;
        series.push_back(s);
    }
    bool any_failed = false;
    for (const auto& c : check_inequality17(series, in, C))
        any_failed |= !c.passed;
    CHECK(any_failed);
}

TEST_CASE("comparison inequality preconditions")
{
    const CriteriaInputs in = unit_inputs();
    std::vector<FunctionalSample> two(2);
    two[1].t = 1;
    CHECK_THROWS_AS(check_inequality17(two, in, 1.0), InvalidArgument);
    std::vector<FunctionalSample> uneven(3);
    uneven[1].t = 1;
    uneven[2].t = 3;
    CHECK_THROWS_AS(check_inequality17(uneven, in, 1.0), InvalidArgument);
}

TEST_CASE("bounds chain is skipped inside the neighborhood")
{
    FunctionalSample s;
    s.m = 1;
    s.E = 1;
    CHECK(check_bounds_chain(s, 0.4, -8, 0.5).empty());
    CHECK(check_bounds_chain(s, 0.6, -8, 0.5).size() == 4);
}

TEST_CASE("blow-up oracle spot values")
{
    const CriteriaInputs in = unit_inputs();
    const BlowupResult t2 = blowup_oracle(1.0, 0.0, in);
    REQUIRE(t2.closed_form_T);
    REQUIRE(t2.numeric_T);
    CHECK(rel_close(*t2.closed_form_T, 8.0 / 9.0, 1e-14));
    CHECK(rel_close(*t2.numeric_T, 8.0 / 9.0, 1e-6));

    const BlowupResult t3 = blowup_oracle(0.0, -1.0, in);
    REQUIRE(t3.closed_form_T);
    REQUIRE(t3.numeric_T);
    CHECK(rel_close(*t3.closed_form_T, pi / 18, 1e-14));
    CHECK(rel_close(*t3.numeric_T, pi / 18, 1e-6));
}

TEST_CASE("blow-up oracle positive case")
{
    const CriteriaInputs in = unit_inputs();
    const double Q0 = 0.25, A = 8 * std::sqrt(Q0);
    const BlowupResult eq = blowup_oracle(A, Q0, in);
    CHECK_FALSE(eq.closed_form_T);
    CHECK_FALSE(eq.numeric_T);
    CHECK_FALSE(blowup_oracle(0.5 * A, Q0, in).numeric_T);

    const BlowupResult r = blowup_oracle(2 * A, Q0, in);
    REQUIRE(r.closed_form_T);
    REQUIRE(r.numeric_T);
    const double lambda = 9 * std::sqrt(Q0);
    CHECK(rel_close(*r.closed_form_T, std::log(3.0) / (2 * lambda), 1e-14));
    CHECK(rel_close(*r.numeric_T, *r.closed_form_T, 1e-6));
    CHECK(rel_close(*r.printed_T1, 2 * *r.closed_form_T, 1e-14));
}

TEST_CASE("blow-up threshold is sharp for Q0 = 0")
{
    CriteriaInputs in = unit_inputs();
    in.epsilon = 0.5;
    in.T = 10;
    const double delta = classify_and_delta(in, 0.0, 0.0).delta;
    const double F_star = 8 * std::abs(delta);
    const BlowupResult above = blowup_oracle(F_star * (1 + 1e-3), 0.0, in);
    const BlowupResult below = blowup_oracle(F_star * (1 - 1e-3), 0.0, in);
    REQUIRE(above.numeric_T);
    REQUIRE(below.numeric_T);
    CHECK(*above.numeric_T < in.T);
    CHECK(*below.numeric_T > in.T);
    CHECK_FALSE(blowup_oracle(-1.0, 0.0, in).numeric_T);
}

TEST_CASE("randomized oracle cases agree")
{
    CHECK(all_passed(random_oracle_cases(60, 3)));
}

TEST_CASE("randomized Cauchy-Schwarz moment cases hold")
{
    const auto checks = random_lemma2_cases(30, 5);
    CHECK(checks.size() >= 30);
    CHECK(all_passed(checks));
}

TEST_CASE("constant inflow reaches the neighborhood at t = 1.5")
{
    const TheoremReport r = run_theorem_scenario(constant_scenario(-1.0));
    REQUIRE(r.hit_time);
    CHECK(std::abs(*r.hit_time - 1.5) <= 2e-3);
    CHECK(r.verdict == Verdict::consistent_hit);
    CHECK(r.cond10_value < 0);
    CHECK(r.E_drift <= 1e-12);
    CHECK(r.failed_checks() == 0);
}

TEST_CASE("receding volume makes no claim")
{
    const TheoremReport r = run_theorem_scenario(constant_scenario(1.0));
    CHECK_FALSE(r.hit_time);
    CHECK(r.cond10_value > 0);
    CHECK_FALSE(r.cond10_holds);
    CHECK(r.verdict == Verdict::consistent_no_claim);
    CHECK(r.failed_checks() == 0);
    CHECK(r.series.size() == 501);
}

TEST_CASE("expansion away from x0 makes no claim")
{
    ScenarioConfig c = constant_scenario(1.0);
    c.flow_kind = FlowKind::expansion;
    c.flow_parameters = {1.0, 0.0, 1.0};
    c.T = 1;
    const TheoremReport r = run_theorem_scenario(c);
    CHECK(r.cond10_value > 0);
    CHECK(r.verdict == Verdict::consistent_no_claim);
    CHECK(r.failed_checks() == 0);
}

TEST_CASE("horizon beyond the flow lifetime is a config error")
{
    ScenarioConfig c = constant_scenario(1.0);
    c.flow_kind = FlowKind::expansion;
    c.flow_parameters = {1.0, 0.0, -1.0};
    c.T = 2;
    CHECK_THROWS_AS(run_theorem_scenario(c), ConfigError);
}

TEST_CASE("sweep keeps grid order and flags invalid points")
{
    ScenarioConfig c = constant_scenario(-1.0);
    c.sweep_q = {-12, -8};
    c.sweep_epsilon = {0.5, 2.5};
    const auto rows = run_sweep(c);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].q == -12);
    CHECK(rows[0].epsilon == 0.5);
    CHECK(rows[1].epsilon == 2.5);
    CHECK(rows[0].valid);
    CHECK_FALSE(rows[1].valid);
    CHECK(rows[2].valid);
    CHECK(rows[2].criteria.inputs.q == -8);
}
