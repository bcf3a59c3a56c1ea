#ifndef ROUTER_SCENARIO_HPP
#define ROUTER_SCENARIO_HPP

// Scenario description shared by the CLI, sweeps and CSV output.

#include "router/oracle.hpp"
#include "router/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace router {

enum class InputCase { Single, Two, Three };

std::string_view to_string(InputCase c);
std::optional<InputCase> parse_input_case(std::string_view name);

struct Scenario {
    InputCase input_case = InputCase::Single;
    double gamma1 = 1;
    double gamma2 = 1;
    double gamma_c = 0;
    double delta = 0;  // omega_c - omega (centre detuning for packets)
    double phi = 0;
    double theta = 0;
    double theta_prime = 0;
    double mean_n = 1;
    std::optional<double> omega0_detuning;  // overrides delta in packet mode
    std::optional<double> bandwidth;        // Omega; set => Gaussian packets
    int points = 4001;

    bool packet_mode() const { return bandwidth.has_value(); }
    double effective_delta() const { return packet_mode() && omega0_detuning ? *omega0_detuning : delta; }
    RouterParams<double> params() const { return {gamma1, gamma2, gamma_c, 0.0}; }
};

struct ScenarioResult {
    Scenario scenario;
    OutputReport<double> report;
};

/// Closed forms when lossless and monochromatic, the general scattering map
/// when gamma_c > 0, packet quadrature when a bandwidth is set.
ScenarioResult evaluate(const Scenario &s);

enum class SweepVariable { Phi, Theta, ThetaPrime, Delta, Gamma2, GammaC, Omega };

std::string_view to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

struct SweepAxis {
    SweepVariable variable = SweepVariable::Phi;
    double start = 0;
    double stop = 1;
    int count = 2;

    double value(int i) const;
};

struct SweepSpec {
    SweepAxis axis;
    std::optional<SweepAxis> grid2;  // inner axis, long-format rows
};

/// Throws InvalidArgument on start >= stop, count outside [2, 1e6] or
/// repeated variables.
void validate(const SweepSpec &spec);

void set_variable(Scenario &s, SweepVariable v, double value);

/// Rows in input order (outer axis major). Points are evaluated on up to
/// `threads` workers; output ordering does not depend on the thread count.
std::vector<ScenarioResult> run_sweep(const Scenario &base, const SweepSpec &spec, unsigned threads = 1);

// CSV

inline constexpr std::string_view kCsvHeader =
    "case,gamma1,gamma2,gamma_c,delta,phi,theta,theta_prime,Omega,mean_n,N_r1,N_l1,N_r2,N_l2,N_total,loss";

/// Shortest round-trip decimal, '.' separator, locale independent.
std::string format_number(double x);

std::string csv_row(const ScenarioResult &r);

void write_csv(std::ostream &os, const std::vector<ScenarioResult> &rows);

/// Packet scenario integrated in the time domain; lab-frame cavity amplitude.
CavityTrajectory<double> trajectory_for(const Scenario &s);

/// Columns t,re_c,im_c,abs2_c with a header row.
void write_trajectory_csv(std::ostream &os, const CavityTrajectory<double> &traj);

}  // namespace router

#endif  // ROUTER_SCENARIO_HPP
