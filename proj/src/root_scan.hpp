#pragma once
// Bracketing scan for zeros of a real function of alpha on an interval.
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace polewave::detail {

//! Sign changes on n_scan subintervals refined with TOMS 748 to
//! |d alpha| < kRootTolerance; sign changes through poles are rejected and
//! described in notes. The window is widened by 1% once if an edge value is
//! nearly zero. Roots are returned in descending order.
std::vector<double> find_axis_roots(const std::function<double(double)> &F,
                                    std::pair<double, double> window,
                                    int n_scan,
                                    std::vector<std::string> *notes);

} // namespace polewave::detail
