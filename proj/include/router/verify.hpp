#ifndef ROUTER_VERIFY_HPP
#define ROUTER_VERIFY_HPP

// Self-check suites behind `route verify`: analytic closed forms against the
// general scattering map, packet quadrature against the monochromatic limit,
// and the time-domain oracle against both.

#include <string>
#include <string_view>
#include <vector>

namespace router {

struct SuiteResult {
    std::string name;
    std::string group;   // scattering | wavepacket | oracle
    double metric = 0;   // max deviation, or the measured value for order checks
    double bound = 0;
    bool lower_bound = false;  // true: pass iff metric >= bound
    bool passed = false;
    std::string detail;
};

std::vector<std::string> suite_names();

/// Observed RK4 convergence order, log2 of successive differences of the
/// final state for steps h, h/2, h/4 on a smooth driven decay.
double measured_rk4_order();

/// "all", a group name, or a suite name. Throws InvalidArgument otherwise.
std::vector<SuiteResult> run_suites(std::string_view selection);

}  // namespace router

#endif  // ROUTER_VERIFY_HPP
