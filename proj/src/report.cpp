#include "lagvol/report.hpp"

#include <array>
#include <charconv>

namespace lagvol {

std::string format_number(double v)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

namespace {

const char* yes_no(bool b)
{
    return b ? "true" : "false";
}

void kv(std::ostream& os, const std::string& key, double v)
{
    os << key << ": " << format_number(v) << '\n';
}

void kv(std::ostream& os, const std::string& key, const std::string& v)
{
    os << key << ": " << v << '\n';
}

void kv_opt(std::ostream& os, const std::string& key, const std::optional<double>& v)
{
    os << key << ": " << (v ? format_number(*v) : std::string("none")) << '\n';
}

void check_line(std::ostream& os, const std::string& prefix, const CheckReport& c)
{
    os << prefix << c.name << " t=" << format_number(c.t) << " lhs=" << format_number(c.lhs)
       << " rhs=" << format_number(c.rhs) << " slack=" << format_number(c.slack)
       << " tolerance=" << format_number(c.tolerance) << '\n';
}

void criteria_body(std::ostream& os, const CriteriaReport& r)
{
    const CriteriaInputs& in = r.inputs;
    kv(os, "q", in.q);
    kv(os, "gamma", in.gamma);
    kv(os, "n", static_cast<double>(in.n));
    kv(os, "s0", in.s0);
    kv(os, "m", in.m);
    kv(os, "E", in.E);
    kv(os, "M", in.M);
    kv(os, "epsilon", in.epsilon);
    kv(os, "T", in.T);
    kv(os, "G0", in.G0);
    kv(os, "d_init", in.d_init);
    kv(os, "sigma_n", r.constants.sigma_n);
    kv(os, "C1", r.constants.C1);
    kv(os, "C3", r.constants.C3);
    kv(os, "C", r.constants.C);
    kv(os, "Q0", r.Q0);
    kv(os, "R0", r.R0);
    kv(os, "case", to_string(r.threshold_case));
    kv(os, "delta", r.delta);
    kv(os, "delta_printed", r.delta_printed);
    kv(os, "long_horizon", r.long_horizon);
    kv(os, "cond10", in.cond10);
    kv(os, "cond10_holds", yes_no(r.cond10_holds));
    kv(os, "nec_ok", yes_no(r.nec_ok));
    kv(os, "nec_condition", r.nec_detail.name);
    kv(os, "nec_lhs", r.nec_detail.lhs);
    kv(os, "nec_rhs", r.nec_detail.rhs);
    kv(os, "nec_slack", r.nec_detail.slack);
    kv(os, "nec_printed_rhs", r.nec_detail.printed_rhs);
    kv(os, "nec_small_r_bound", r.nec_detail.small_r_bound);
}

} // namespace

void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows)
{
    os << "t,m,E,G,F,I1,I2,I3,I4,reg,dist,Qq\n";
    for (const auto& r : rows) {
        const FunctionalSample& s = r.s;
        const double cols[] = {s.t, s.m, s.E, s.G, s.F, s.I1, s.I2, s.I3, s.I4, s.reg, r.dist, r.Qq};
        for (std::size_t i = 0; i < std::size(cols); ++i)
            os << (i ? "," : "") << format_number(cols[i]);
        os << '\n';
    }
}

void write_criteria_report(std::ostream& os, const std::string& name, const CriteriaReport& r)
{
    kv(os, "scenario", name);
    criteria_body(os, r);
}

void write_criteria_csv(std::ostream& os, const std::string& name, const CriteriaReport& r)
{
    os << "scenario,q,epsilon,m,E,G0,C,Q0,R0,case,delta,cond10,cond10_holds,nec_ok\n";
    os << name << ',' << format_number(r.inputs.q) << ',' << format_number(r.inputs.epsilon) << ','
       << format_number(r.inputs.m) << ',' << format_number(r.inputs.E) << ',' << format_number(r.inputs.G0) << ','
       << format_number(r.constants.C) << ',' << format_number(r.Q0) << ',' << format_number(r.R0) << ','
       << to_string(r.threshold_case) << ',' << format_number(r.delta) << ',' << format_number(r.inputs.cond10)
       << ',' << yes_no(r.cond10_holds) << ',' << yes_no(r.nec_ok) << '\n';
}

void write_theorem_report(std::ostream& os, const TheoremReport& r)
{
    kv(os, "scenario", r.name);
    criteria_body(os, r.criteria);
    kv(os, "F0", r.F0);
    kv_opt(os, "comparison_T_closed", r.comparison.closed_form_T);
    kv_opt(os, "comparison_T_numeric", r.comparison.numeric_T);
    kv_opt(os, "comparison_T1_printed", r.comparison.printed_T1);
    kv(os, "horizon", r.horizon);
    kv_opt(os, "hit_time", r.hit_time);
    kv(os, "attained_x0", yes_no(r.attained_x0));
    kv(os, "end_time", r.end_time);
    kv(os, "samples", static_cast<double>(r.series.size()));
    kv(os, "E_drift", r.E_drift);
    kv(os, "reg_max", r.reg_max);
    kv(os, "reg_within_M", yes_no(r.reg_max <= r.criteria.inputs.M));
    kv(os, "smooth", yes_no(r.smooth));
    if (!r.smooth)
        kv(os, "smoothness_message", r.smoothness_message);
    kv(os, "checks_total", static_cast<double>(r.checks.size()));
    kv(os, "checks_failed", static_cast<double>(r.failed_checks()));
    for (const auto& c : r.checks)
        if (!c.passed)
            check_line(os, "fail: ", c);
    kv(os, "verdict", to_string(r.verdict));
}

void write_verify_report(std::ostream& os, const VerifyReport& r)
{
    kv(os, "scenario", r.name);
    kv(os, "seed", std::to_string(r.seed));
    for (const auto& s : r.sections) {
        std::size_t failed = 0;
        for (const auto& c : s.checks)
            failed += c.passed ? 0 : 1;
        kv(os, "section." + s.name + ".total", static_cast<double>(s.checks.size()));
        kv(os, "section." + s.name + ".passed", static_cast<double>(s.checks.size() - failed));
        for (const auto& c : s.checks)
            if (!c.passed)
                check_line(os, "fail: " + s.name + ".", c);
    }
    kv(os, "total", static_cast<double>(r.total()));
    kv(os, "passed", static_cast<double>(r.total() - r.failed()));
    kv(os, "failed", static_cast<double>(r.failed()));
    kv(os, "status", r.failed() == 0 ? "PASS" : "FAIL");
}

void write_verify_csv(std::ostream& os, const VerifyReport& r)
{
    os << "section,name,t,lhs,rhs,slack,tolerance,passed\n";
    for (const auto& s : r.sections)
        for (const auto& c : s.checks)
            os << s.name << ',' << c.name << ',' << format_number(c.t) << ',' << format_number(c.lhs) << ','
               << format_number(c.rhs) << ',' << format_number(c.slack) << ',' << format_number(c.tolerance) << ','
               << yes_no(c.passed) << '\n';
}

void write_sweep_report(std::ostream& os, const std::string& name, const std::vector<SweepRow>& rows)
{
    kv(os, "scenario", name);
    kv(os, "points", static_cast<double>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        const std::string p = "point." + std::to_string(i) + ".";
        kv(os, p + "q", row.q);
        kv(os, p + "epsilon", row.epsilon);
        kv(os, p + "valid", yes_no(row.valid));
        if (!row.valid) {
            kv(os, p + "error", row.error);
            continue;
        }
        kv(os, p + "Q0", row.criteria.Q0);
        kv(os, p + "R0", row.criteria.R0);
        kv(os, p + "case", to_string(row.criteria.threshold_case));
        kv(os, p + "delta", row.criteria.delta);
        kv(os, p + "cond10", row.criteria.inputs.cond10);
        kv(os, p + "cond10_holds", yes_no(row.criteria.cond10_holds));
        kv(os, p + "nec_ok", yes_no(row.criteria.nec_ok));
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << "q,epsilon,valid,Q0,R0,case,delta,cond10,cond10_holds,nec_ok\n";
    for (const auto& row : rows) {
        os << format_number(row.q) << ',' << format_number(row.epsilon) << ',' << yes_no(row.valid);
        if (row.valid)
            os << ',' << format_number(row.criteria.Q0) << ',' << format_number(row.criteria.R0) << ','
               << to_string(row.criteria.threshold_case) << ',' << format_number(row.criteria.delta) << ','
               << format_number(row.criteria.inputs.cond10) << ',' << yes_no(row.criteria.cond10_holds) << ','
               << yes_no(row.criteria.nec_ok);
        else
            os << ",,,,,,,";
        os << '\n';
    }
}

} // namespace lagvol
