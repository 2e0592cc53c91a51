#pragma once

#include <algorithm>
#include <cmath>

namespace lagvol::test {

// |a - b| <= tol * max(|a|, |b|, floor)
inline bool rel_close(double a, double b, double tol, double floor = 0.0)
{
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

} // namespace lagvol::test
