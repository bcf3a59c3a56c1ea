#ifndef ROUTER_WAVEPACKET_HPP
#define ROUTER_WAVEPACKET_HPP

// Gaussian coherent wave packets scattered frequency by frequency and
// integrated over the spectrum. Cavity decay gamma_c enters only through the
// response denominator; lost flux shows up as OutputReport::loss.

#include "router/scattering.hpp"
#include "router/types.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace router {

enum class QuadratureRule { Simpson, Trapezoid };

struct QuadratureSpec {
    double window_halfwidth = 8;  // in units of Omega, around omega0
    int points = 4001;            // odd
    QuadratureRule rule = QuadratureRule::Simpson;
    int max_doublings = 4;
    double refinement_tolerance = 1e-6;
};

std::optional<ErrorCode> validate(const QuadratureSpec &q);

/// alpha_omega = alpha (2 pi Omega^2)^{-1/4} exp(-(omega - omega0)^2 / (4 Omega^2)),
/// alpha = sqrt(mean_n) e^{i phase}.
template <typename Scalar>
std::complex<Scalar> gaussian_spectrum(const WavePacket<Scalar> &packet, Scalar omega) {
    using std::exp;
    using std::pow;
    using std::sqrt;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar W = packet.bandwidth;
    const Scalar x = omega - packet.omega0;
    const Scalar mag = sqrt(packet.mean_n) * pow(2 * pi * W * W, Scalar(-0.25)) * exp(-x * x / (4 * W * W));
    return std::polar(mag, packet.phase);
}

/// Composite-rule weights for n equally spaced nodes with spacing h.
template <typename Scalar>
std::vector<Scalar> quadrature_weights(int n, Scalar h, QuadratureRule rule) {
    std::vector<Scalar> w(static_cast<std::size_t>(n), h);
    if (rule == QuadratureRule::Trapezoid) {
        w.front() = w.back() = h / 2;
        return w;
    }
    for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] = h / 3 * ((i == 0 || i == n - 1) ? 1 : (i % 2 == 1 ? 4 : 2));
    return w;
}

namespace detail {

template <typename Scalar>
void check_packets(std::span<const WavePacket<Scalar>> packets) {
    using std::isfinite;
    for (const auto &pk : packets) {
        if (!(pk.bandwidth > Scalar(0)) || !isfinite(pk.bandwidth))
            throw RouterError(ErrorCode::InvalidArgument, "packet bandwidth must be positive and finite");
        if (!(pk.mean_n >= Scalar(0)) || !isfinite(pk.mean_n))
            throw RouterError(ErrorCode::InvalidArgument, "packet mean photon number must be finite and >= 0");
        if (!isfinite(pk.omega0) || !isfinite(pk.phase))
            throw RouterError(ErrorCode::NonFinite, "packet centre frequency and phase must be finite");
        if (pk.omega0 != packets.front().omega0 || pk.bandwidth != packets.front().bandwidth)
            throw RouterError(ErrorCode::InvalidArgument, "packets must share centre frequency and bandwidth");
    }
}

template <typename Scalar>
Scalar injected(std::span<const WavePacket<Scalar>> packets) {
    Scalar n = 0;
    for (const auto &pk : packets) n += pk.mean_n;
    return n;
}

}  // namespace detail

/// Spectral integral of |scatter(alpha_omega)|^2 on one fixed grid, no
/// refinement check. Accumulates in node order.
template <typename Scalar>
OutputReport<Scalar> integrate_packets_fixed(const RouterParams<Scalar> &p,
                                             std::span<const WavePacket<Scalar>> packets, const QuadratureSpec &q) {
    require_valid(p);
    if (auto err = validate(q)) throw RouterError(*err, "invalid quadrature specification");
    detail::check_packets(packets);
    if (packets.empty()) return {};

    const Scalar omega0 = packets.front().omega0;
    const Scalar half = Scalar(q.window_halfwidth) * packets.front().bandwidth;
    const int n = q.points;
    const Scalar h = 2 * half / Scalar(n - 1);
    const std::vector<Scalar> w = quadrature_weights(n, h, q.rule);

    ChannelFluxes<Scalar> acc = ChannelFluxes<Scalar>::Zero();
    for (int i = 0; i < n; ++i) {
        const Scalar omega = omega0 - half + Scalar(i) * h;
        ChannelAmplitudes<Scalar> in = ChannelAmplitudes<Scalar>::Zero();
        for (const auto &pk : packets) in(pk.channel.index()) += gaussian_spectrum(pk, omega);
        const ChannelAmplitudes<Scalar> out = scatter(p, in, p.omega_c - omega);
        acc += w[static_cast<std::size_t>(i)] * out.cwiseAbs2();
    }
    return OutputReport<Scalar>::from_fluxes(acc, detail::injected(packets));
}

/// Mean output numbers for Gaussian packets. The grid is refined by step
/// halving until two successive levels agree to q.refinement_tolerance
/// (relative to n_in); throws QuadratureUnderResolved after q.max_doublings.
template <typename Scalar>
OutputReport<Scalar> packet_output_numbers(const RouterParams<Scalar> &p,
                                           std::span<const WavePacket<Scalar>> packets,
                                           const QuadratureSpec &q = {}) {
    QuadratureSpec level = q;
    OutputReport<Scalar> coarse = integrate_packets_fixed(p, packets, level);
    Scalar worst = 0;
    for (int k = 0; k < q.max_doublings; ++k) {
        level.points = 2 * level.points - 1;
        OutputReport<Scalar> fine = integrate_packets_fixed(p, packets, level);
        worst = max_relative_deviation(coarse, fine);
        if (worst <= Scalar(q.refinement_tolerance)) return fine;
        coarse = fine;
    }
    throw RouterError(ErrorCode::QuadratureUnderResolved,
                      "packet quadrature did not converge after step halving (last change " +
                          std::to_string(static_cast<double>(worst)) + ")");
}

template <typename Scalar>
OutputReport<Scalar> packet_output_numbers(const RouterParams<Scalar> &p,
                                           const std::vector<WavePacket<Scalar>> &packets,
                                           const QuadratureSpec &q = {}) {
    return packet_output_numbers(p, std::span<const WavePacket<Scalar>>(packets), q);
}

// Packet versions of the canonical input configurations. Every packet
// carries mean_n, centred at omega0 = omega_c - delta_bar.

template <typename Scalar>
std::vector<WavePacket<Scalar>> single_packet(const RouterParams<Scalar> &p, Scalar mean_n, Scalar delta_bar,
                                              Scalar bandwidth) {
    return {{kR1, mean_n, p.omega_c - delta_bar, bandwidth, 0}};
}

template <typename Scalar>
std::vector<WavePacket<Scalar>> two_packets(const RouterParams<Scalar> &p, Scalar mean_n, Scalar delta_bar,
                                            Scalar bandwidth, Scalar phi) {
    const Scalar w0 = p.omega_c - delta_bar;
    return {{kR1, mean_n, w0, bandwidth, 0}, {kL1, mean_n, w0, bandwidth, phi}};
}

template <typename Scalar>
std::vector<WavePacket<Scalar>> three_packets(const RouterParams<Scalar> &p, Scalar mean_n, Scalar delta_bar,
                                              Scalar bandwidth, Scalar theta, Scalar theta_prime) {
    const Scalar w0 = p.omega_c - delta_bar;
    return {{kR1, mean_n, w0, bandwidth, 0}, {kR2, mean_n, w0, bandwidth, theta},
            {kL2, mean_n, w0, bandwidth, theta_prime}};
}

}  // namespace router

#endif  // ROUTER_WAVEPACKET_HPP
