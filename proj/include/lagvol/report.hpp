#pragma once

#include "lagvol/criteria.hpp"
#include "lagvol/verify.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace lagvol {

/// Shortest decimal text that reads back to the same double; dot decimal
/// point regardless of locale.
std::string format_number(double v);

/// Header `t,m,E,G,F,I1,I2,I3,I4,reg,dist,Qq`, one record per sample.
void write_series_csv(std::ostream& os, const std::vector<SeriesRow>& rows);

// Structured reports are `key: value` lines in a fixed key order.
void write_criteria_report(std::ostream& os, const std::string& name, const CriteriaReport& r);
void write_criteria_csv(std::ostream& os, const std::string& name, const CriteriaReport& r);
void write_theorem_report(std::ostream& os, const TheoremReport& r);
void write_verify_report(std::ostream& os, const VerifyReport& r);
void write_verify_csv(std::ostream& os, const VerifyReport& r);
void write_sweep_report(std::ostream& os, const std::string& name, const std::vector<SweepRow>& rows);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

} // namespace lagvol
