#ifndef ROUTER_ORACLE_HPP
#define ROUTER_ORACLE_HPP

// Time-domain cross-check. Coherent inputs reduce the Heisenberg equations to
// a linear ODE for the classical cavity amplitude, which is integrated with
// uniform-step RK4 in a frame rotating at a reference carrier frequency.
// Output fluxes are then integrated over time with composite Simpson.

#include "router/scattering.hpp"
#include "router/types.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace router {

template <typename Scalar = double>
struct TimeGrid {
    Scalar t_start = 0;
    Scalar t_end = 0;
    Scalar dt = 0;  // requested step; the effective step makes the count even
};

/// A wave packet arriving at the cavity with its envelope peak at t0.
template <typename Scalar = double>
struct PulseDrive {
    WavePacket<Scalar> packet;
    Scalar t0 = 0;
};

/// Lab-frame input field <o_in(t)>:
/// alpha (2 Omega^2/pi)^{1/4} exp(-Omega^2 (t-t0)^2) exp(-i omega0 (t-t0)) e^{i phase}.
template <typename Scalar>
std::complex<Scalar> time_pulse(const WavePacket<Scalar> &packet, Scalar t, Scalar t0 = 0) {
    using std::exp;
    using std::pow;
    using std::sqrt;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar W = packet.bandwidth;
    const Scalar tau = t - t0;
    const Scalar mag = sqrt(packet.mean_n) * pow(2 * W * W / pi, Scalar(0.25)) * exp(-W * W * tau * tau);
    return std::polar(mag, packet.phase - packet.omega0 * tau);
}

/// Fraction of a pulse's |envelope|^2 mass that lies outside [a, b].
template <typename Scalar>
Scalar pulse_mass_outside(const PulseDrive<Scalar> &pulse, Scalar a, Scalar b) {
    using std::erfc;
    using std::sqrt;
    const Scalar s = sqrt(Scalar(2)) * pulse.packet.bandwidth;
    return (erfc((pulse.t0 - a) * s) + erfc((b - pulse.t0) * s)) / 2;
}

/// Uniform-step classical RK4 for dc/dt = rate * c + drive(t). Returns
/// steps + 1 samples starting with c0 at t0.
template <typename Scalar, typename Drive>
std::vector<std::complex<Scalar>> rk4_linear(std::complex<Scalar> rate, Drive &&drive, std::complex<Scalar> c0,
                                             Scalar t0, Scalar dt, std::size_t steps) {
    using C = std::complex<Scalar>;
    std::vector<C> c;
    c.reserve(steps + 1);
    c.push_back(c0);
    C y = c0;
    C f_start = drive(t0);
    for (std::size_t i = 0; i < steps; ++i) {
        const Scalar t = t0 + Scalar(i) * dt;
        const C f_mid = drive(t + dt / 2);
        const C f_end = drive(t + dt);
        const C k1 = rate * y + f_start;
        const C k2 = rate * (y + dt / 2 * k1) + f_mid;
        const C k3 = rate * (y + dt / 2 * k2) + f_mid;
        const C k4 = rate * (y + dt * k3) + f_end;
        y += dt / 6 * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
        c.push_back(y);
        f_start = f_end;
    }
    return c;
}

/// Cavity amplitude samples. Stored in the frame rotating at
/// reference_omega; lab(i) restores the e^{-i omega_ref t} carrier.
template <typename Scalar = double>
struct CavityTrajectory {
    Scalar t_start = 0;
    Scalar dt = 0;
    Scalar reference_omega = 0;
    std::vector<std::complex<Scalar>> rotating;

    std::size_t size() const { return rotating.size(); }
    Scalar time(std::size_t i) const { return t_start + Scalar(i) * dt; }
    std::complex<Scalar> lab(std::size_t i) const {
        return rotating[i] * std::polar(Scalar(1), -reference_omega * time(i));
    }
};

namespace detail {

template <typename Scalar>
Scalar reference_frequency(std::span<const PulseDrive<Scalar>> pulses, const RouterParams<Scalar> &p) {
    return pulses.empty() ? p.omega_c : pulses.front().packet.omega0;
}

/// Pulse field in the rotating frame: time_pulse(t) * e^{i omega_ref t}.
template <typename Scalar>
std::complex<Scalar> rotating_pulse(const PulseDrive<Scalar> &pulse, Scalar t, Scalar omega_ref) {
    using std::exp;
    using std::pow;
    using std::sqrt;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const WavePacket<Scalar> &pk = pulse.packet;
    const Scalar W = pk.bandwidth;
    const Scalar tau = t - pulse.t0;
    const Scalar mag = sqrt(pk.mean_n) * pow(2 * W * W / pi, Scalar(0.25)) * exp(-W * W * tau * tau);
    return std::polar(mag, pk.phase + pk.omega0 * pulse.t0 - (pk.omega0 - omega_ref) * t);
}

template <typename Scalar>
std::size_t even_step_count(const TimeGrid<Scalar> &g) {
    using std::ceil;
    auto n = static_cast<std::size_t>(ceil((g.t_end - g.t_start) / g.dt - Scalar(1e-9)));
    n = std::max<std::size_t>(n, 2);
    return n + (n % 2);
}

}  // namespace detail

/// A grid meeting every integrate_cavity requirement: 12/Omega either side of
/// each pulse peak plus a 40/Gamma ring-down tail, step resolving the total
/// decay, the bandwidth and every carrier offset by a factor 100.
template <typename Scalar>
TimeGrid<Scalar> default_grid(const RouterParams<Scalar> &p, std::span<const PulseDrive<Scalar>> pulses) {
    using std::abs;
    using std::max;
    using std::min;
    const Scalar gamma = p.total_decay();
    if (pulses.empty()) return {0, 1000 * Scalar(0.01) / gamma, Scalar(0.01) / gamma};
    const Scalar w_ref = detail::reference_frequency(pulses, p);
    Scalar lo = pulses.front().t0, hi = pulses.front().t0;
    Scalar fastest = max(gamma, abs(p.omega_c - w_ref));
    for (const auto &pl : pulses) {
        lo = min(lo, pl.t0 - 12 / pl.packet.bandwidth);
        hi = max(hi, pl.t0 + 12 / pl.packet.bandwidth);
        fastest = max(fastest, max(2 * pl.packet.bandwidth, abs(pl.packet.omega0 - w_ref)));
    }
    hi += 40 / gamma;
    const Scalar dt = min(Scalar(0.01) / fastest, (hi - lo) / 1000);
    return {lo, hi, dt};
}

template <typename Scalar>
TimeGrid<Scalar> default_grid(const RouterParams<Scalar> &p, const std::vector<PulseDrive<Scalar>> &pulses) {
    return default_grid(p, std::span<const PulseDrive<Scalar>>(pulses));
}

/// Integrates the cavity amplitude from the vacuum at grid.t_start.
/// GridTooCoarse: fewer than 1000 steps or dt > 0.01/(gamma1+gamma2+gamma_c).
/// PulseNotContained: more than 1e-10 of any pulse outside the window, or the
/// cavity still rings at t_end (|c| > 1e-8 max|c|).
template <typename Scalar>
CavityTrajectory<Scalar> integrate_cavity(const RouterParams<Scalar> &p,
                                          std::span<const PulseDrive<Scalar>> pulses, const TimeGrid<Scalar> &grid) {
    using C = std::complex<Scalar>;
    using std::abs;
    using std::sqrt;
    require_valid(p);
    for (const auto &pl : pulses) {
        if (!(pl.packet.bandwidth > Scalar(0)))
            throw RouterError(ErrorCode::InvalidArgument, "pulse bandwidth must be positive");
        if (!(pl.packet.mean_n >= Scalar(0)))
            throw RouterError(ErrorCode::InvalidArgument, "pulse mean photon number must be >= 0");
    }
    if (!(grid.dt > Scalar(0)) || !(grid.t_end > grid.t_start))
        throw RouterError(ErrorCode::GridTooCoarse, "time grid needs dt > 0 and t_end > t_start");

    const std::size_t steps = detail::even_step_count(grid);
    const Scalar dt = (grid.t_end - grid.t_start) / Scalar(steps);
    const Scalar gamma = p.total_decay();
    if (steps < 1000 || dt > Scalar(0.01) / gamma * (1 + Scalar(1e-12)))
        throw RouterError(ErrorCode::GridTooCoarse,
                          "time grid needs >= 1000 steps and dt <= 0.01/(gamma1+gamma2+gamma_c)");
    for (const auto &pl : pulses)
        if (pl.packet.mean_n > Scalar(0) && pulse_mass_outside(pl, grid.t_start, grid.t_end) > Scalar(1e-10))
            throw RouterError(ErrorCode::PulseNotContained, "pulse envelope extends beyond the time grid");

    const Scalar w_ref = detail::reference_frequency(pulses, p);
    const Eigen::Matrix<Scalar, 4, 1> k = coupling_vector(p);
    const C rate(-gamma, -(p.omega_c - w_ref));
    auto drive = [&](Scalar t) {
        C s{};
        for (const auto &pl : pulses) s += k(pl.packet.channel.index()) * detail::rotating_pulse(pl, t, w_ref);
        return C(0, -1) * s;
    };

    CavityTrajectory<Scalar> traj;
    traj.t_start = grid.t_start;
    traj.dt = dt;
    traj.reference_omega = w_ref;
    traj.rotating = rk4_linear(rate, drive, C{}, grid.t_start, dt, steps);

    Scalar peak = 0;
    for (const C &c : traj.rotating) peak = std::max(peak, abs(c));
    if (peak > Scalar(0) && abs(traj.rotating.back()) > Scalar(1e-8) * peak)
        throw RouterError(ErrorCode::PulseNotContained, "cavity has not emptied by the end of the time grid");
    return traj;
}

template <typename Scalar>
CavityTrajectory<Scalar> integrate_cavity(const RouterParams<Scalar> &p, const std::vector<PulseDrive<Scalar>> &pulses,
                                          const TimeGrid<Scalar> &grid) {
    return integrate_cavity(p, std::span<const PulseDrive<Scalar>>(pulses), grid);
}

/// N_channel = integral of |o_in(t) - i sqrt(gamma_ch) c(t)|^2 dt by composite
/// Simpson on the trajectory nodes.
template <typename Scalar>
OutputReport<Scalar> output_flux(const RouterParams<Scalar> &p, std::span<const PulseDrive<Scalar>> pulses,
                                 const CavityTrajectory<Scalar> &traj) {
    using C = std::complex<Scalar>;
    const std::size_t n = traj.size();
    if (n < 3 || n % 2 == 0)
        throw RouterError(ErrorCode::InvalidArgument, "trajectory needs an odd number (>= 3) of samples");
    const ChannelAmplitudes<Scalar> k = coupling_vector(p).template cast<C>();
    ChannelFluxes<Scalar> acc = ChannelFluxes<Scalar>::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Scalar t = traj.time(i);
        ChannelAmplitudes<Scalar> in = ChannelAmplitudes<Scalar>::Zero();
        for (const auto &pl : pulses)
            in(pl.packet.channel.index()) += detail::rotating_pulse(pl, t, traj.reference_omega);
        const ChannelAmplitudes<Scalar> out = in - (C(0, 1) * traj.rotating[i]) * k;
        const Scalar w = (i == 0 || i == n - 1) ? 1 : (i % 2 == 1 ? 4 : 2);
        acc += w * out.cwiseAbs2();
    }
    acc *= traj.dt / 3;
    Scalar n_in = 0;
    for (const auto &pl : pulses) n_in += pl.packet.mean_n;
    return OutputReport<Scalar>::from_fluxes(acc, n_in);
}

template <typename Scalar>
OutputReport<Scalar> output_flux(const RouterParams<Scalar> &p, const std::vector<PulseDrive<Scalar>> &pulses,
                                 const CavityTrajectory<Scalar> &traj) {
    return output_flux(p, std::span<const PulseDrive<Scalar>>(pulses), traj);
}

/// default_grid + integrate_cavity + output_flux.
template <typename Scalar>
OutputReport<Scalar> oracle_report(const RouterParams<Scalar> &p, const std::vector<PulseDrive<Scalar>> &pulses) {
    const auto traj = integrate_cavity(p, pulses, default_grid(p, pulses));
    return output_flux(p, pulses, traj);
}

/// Drives built from packets, all peaking at t0.
template <typename Scalar>
std::vector<PulseDrive<Scalar>> pulses_from(const std::vector<WavePacket<Scalar>> &packets, Scalar t0 = 0) {
    std::vector<PulseDrive<Scalar>> out;
    out.reserve(packets.size());
    for (const auto &pk : packets) out.push_back({pk, t0});
    return out;
}

}  // namespace router

#endif  // ROUTER_ORACLE_HPP
