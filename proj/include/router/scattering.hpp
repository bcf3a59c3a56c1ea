#ifndef ROUTER_SCATTERING_HPP
#define ROUTER_SCATTERING_HPP

// Monochromatic scattering off the side-coupled cavity.
//
// Steady state of  dc/dt = (-i omega_c - gamma1 - gamma2 - gamma_c) c - i sum_ch sqrt(gamma_ch) a_ch
// with e^{-i omega t} inputs, and  out_ch = in_ch - i sqrt(gamma_ch) c.
// Both directions of waveguide j couple with sqrt(gamma_j) while the cavity
// decays at gamma1 + gamma2 (+ gamma_c); the closed forms below follow from
// exactly this convention.

#include "router/types.hpp"

#include <cmath>
#include <complex>

namespace router {

/// Per-channel coupling amplitudes (sqrt g1, sqrt g1, sqrt g2, sqrt g2).
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> coupling_vector(const RouterParams<Scalar> &p) {
    using std::sqrt;
    Eigen::Matrix<Scalar, 4, 1> k;
    k << sqrt(p.gamma1), sqrt(p.gamma1), sqrt(p.gamma2), sqrt(p.gamma2);
    return k;
}

/// i*delta + gamma1 + gamma2 + gamma_c. Real part > 0 for validated params.
template <typename Scalar>
std::complex<Scalar> response_denominator(const RouterParams<Scalar> &p, Scalar delta) {
    return {p.total_decay(), delta};
}

template <typename Scalar>
std::complex<Scalar> cavity_amplitude(const RouterParams<Scalar> &p,
                                      const ChannelAmplitudes<Scalar> &inputs, Scalar delta) {
    const std::complex<Scalar> drive = coupling_vector(p).template cast<std::complex<Scalar>>().dot(inputs);
    return std::complex<Scalar>(0, -1) * drive / response_denominator(p, delta);
}

template <typename Scalar>
ChannelAmplitudes<Scalar> scatter(const RouterParams<Scalar> &p, const ChannelAmplitudes<Scalar> &inputs,
                                  Scalar delta) {
    const std::complex<Scalar> c = cavity_amplitude(p, inputs, delta);
    return inputs - (std::complex<Scalar>(0, 1) * c) * coupling_vector(p).template cast<std::complex<Scalar>>();
}

/// S(delta) = I - k k^T / (i delta + Gamma); scatter(in) == S * in.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4> scattering_matrix(const RouterParams<Scalar> &p, Scalar delta) {
    using Mat = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
    const ChannelAmplitudes<Scalar> k = coupling_vector(p).template cast<std::complex<Scalar>>();
    return Mat::Identity() - (k * k.transpose()) / response_denominator(p, delta);
}

/// |scatter|^2 per channel packaged as a report; n_in = sum |inputs|^2.
template <typename Scalar>
OutputReport<Scalar> scatter_report(const RouterParams<Scalar> &p, const ChannelAmplitudes<Scalar> &inputs,
                                    Scalar delta) {
    const ChannelAmplitudes<Scalar> out = scatter(p, inputs, delta);
    return OutputReport<Scalar>::from_fluxes(out.cwiseAbs2(), inputs.cwiseAbs2().sum());
}

// Canonical input configurations. The control phase multiplies the later
// port(s): (alpha) on port 1; (alpha, alpha e^{i phi}) on ports 1, 2;
// (alpha, alpha e^{i theta}, alpha e^{i theta'}) on ports 1, 3, 4.

template <typename Scalar>
ChannelAmplitudes<Scalar> single_input(Scalar mean_n) {
    using std::sqrt;
    ChannelAmplitudes<Scalar> a = ChannelAmplitudes<Scalar>::Zero();
    a(kR1.index()) = sqrt(mean_n);
    return a;
}

template <typename Scalar>
ChannelAmplitudes<Scalar> two_input(Scalar mean_n, Scalar phi) {
    using std::sqrt;
    ChannelAmplitudes<Scalar> a = ChannelAmplitudes<Scalar>::Zero();
    a(kR1.index()) = sqrt(mean_n);
    a(kL1.index()) = std::polar(sqrt(mean_n), phi);
    return a;
}

template <typename Scalar>
ChannelAmplitudes<Scalar> three_input(Scalar mean_n, Scalar theta, Scalar theta_prime) {
    using std::sqrt;
    ChannelAmplitudes<Scalar> a = ChannelAmplitudes<Scalar>::Zero();
    a(kR1.index()) = sqrt(mean_n);
    a(kR2.index()) = std::polar(sqrt(mean_n), theta);
    a(kL2.index()) = std::polar(sqrt(mean_n), theta_prime);
    return a;
}

namespace detail {

template <typename Scalar>
void require_lossless(const RouterParams<Scalar> &p, Scalar mean_n) {
    require_valid(p);
    if (!p.lossless())
        throw RouterError(ErrorCode::LossyNotSupported,
                          "closed-form mean numbers are lossless; use scatter_report for gamma_c > 0");
    using std::isfinite;
    if (!(mean_n >= Scalar(0)) || !isfinite(mean_n))
        throw RouterError(ErrorCode::InvalidArgument, "mean photon number must be finite and >= 0");
}

template <typename Scalar>
OutputReport<Scalar> make_report(Scalar r1, Scalar l1, Scalar r2, Scalar l2, Scalar n_in) {
    ChannelFluxes<Scalar> n;
    n << r1, l1, r2, l2;
    return OutputReport<Scalar>::from_fluxes(n, n_in);
}

}  // namespace detail

/// Port 1 driven alone.
template <typename Scalar>
OutputReport<Scalar> mean_output_single(const RouterParams<Scalar> &p, Scalar mean_n, Scalar delta) {
    detail::require_lossless(p, mean_n);
    const Scalar g1 = p.gamma1, g2 = p.gamma2, d2 = delta * delta;
    const Scalar D = d2 + (g1 + g2) * (g1 + g2);
    const Scalar cross = g1 * g2 / D * mean_n;
    return detail::make_report((d2 + g2 * g2) / D * mean_n, g1 * g1 / D * mean_n, cross, cross, mean_n);
}

/// Ports 1 and 2 driven with equal mean numbers, port 2 carrying phase phi.
template <typename Scalar>
OutputReport<Scalar> mean_output_two(const RouterParams<Scalar> &p, Scalar mean_n, Scalar delta, Scalar phi) {
    using std::cos;
    using std::sin;
    detail::require_lossless(p, mean_n);
    const Scalar g1 = p.gamma1, g2 = p.gamma2;
    const Scalar D = delta * delta + (g1 + g2) * (g1 + g2);
    const Scalar even = (1 + cos(phi)) * g1 * g2;
    const Scalar odd = g1 * delta * sin(phi);
    const Scalar r1 = (1 - 2 * (even + odd) / D) * mean_n;
    const Scalar l1 = (1 - 2 * (even - odd) / D) * mean_n;
    const Scalar w2 = 2 * even / D * mean_n;
    return detail::make_report(r1, l1, w2, w2, 2 * mean_n);
}

/// gamma2 = 0 specialisation of mean_output_two: returns (N_r1, N_l1).
template <typename Scalar>
std::pair<Scalar, Scalar> two_port_reduction(Scalar gamma1, Scalar mean_n, Scalar delta, Scalar phi) {
    using std::sin;
    if (!(gamma1 > Scalar(0)))
        throw RouterError(ErrorCode::NonPositiveGamma1, "gamma1 must be positive");
    if (!(mean_n >= Scalar(0)))
        throw RouterError(ErrorCode::InvalidArgument, "mean photon number must be >= 0");
    const Scalar base = delta * delta + gamma1 * gamma1;
    const Scalar swing = 2 * gamma1 * sin(phi) * delta;
    return {(base - swing) / base * mean_n, (base + swing) / base * mean_n};
}

/// Ports 1, 3, 4 driven with equal mean numbers; ports 3 and 4 carry
/// phases theta and theta_prime relative to port 1.
template <typename Scalar>
OutputReport<Scalar> mean_output_three(const RouterParams<Scalar> &p, Scalar mean_n, Scalar delta, Scalar theta,
                                       Scalar theta_prime) {
    using std::cos;
    using std::sin;
    using std::sqrt;
    detail::require_lossless(p, mean_n);
    const Scalar g1 = p.gamma1, g2 = p.gamma2, d = delta;
    const Scalar G = g1 + g2;
    const Scalar D = d * d + G * G;
    const Scalar s = sqrt(g1 * g2);
    const Scalar ct = cos(theta), ctp = cos(theta_prime), st = sin(theta), stp = sin(theta_prime);
    const Scalar cdiff = cos(theta - theta_prime);
    const Scalar sdiff = sin(theta - theta_prime);

    const Scalar r1 = d * d + g2 * g2 + 2 * g1 * g2 - 2 * d * s * (st + stp) - 2 * s * g2 * (ct + ctp) +
                      2 * cdiff * g1 * g2;
    const Scalar l1 = g1 * g1 + 2 * (1 + cdiff) * g1 * g2 + 2 * (ct + ctp) * g1 * s;
    const Scalar r2 = D - g2 * g1 + 2 * st * s * d + 2 * sdiff * g2 * d - 2 * ct * g1 * s + 2 * ctp * g2 * s -
                      2 * cdiff * g1 * g2;
    const Scalar l2 = D - g2 * g1 + 2 * d * (stp * s - sdiff * g2) - 2 * cdiff * g2 * g1 - 2 * ctp * g1 * s +
                      2 * ct * g2 * s;
    return detail::make_report(r1 / D * mean_n, l1 / D * mean_n, r2 / D * mean_n, l2 / D * mean_n, 3 * mean_n);
}

}  // namespace router

#endif  // ROUTER_SCATTERING_HPP
