#ifndef ROUTER_TYPES_HPP
#define ROUTER_TYPES_HPP

// Domain types for the two-waveguide, single-cavity photon router.
//
// Conventions: every rate and frequency is a plain number in units of the
// waveguide-1 coupling gamma1. Detuning is always delta = omega_c - omega.
// Coherent inputs reduce to complex amplitudes, |amplitude|^2 is the mean
// photon number.

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace router {

enum class ErrorCode {
    NonPositiveGamma1,
    NegativeRate,
    NonFinite,
    LossyNotSupported,
    InvalidArgument,
    QuadratureUnderResolved,
    GridTooCoarse,
    PulseNotContained,
};

std::string_view to_string(ErrorCode code);

class RouterError : public std::runtime_error {
public:
    RouterError(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class Direction { Right, Left };

/// One propagating mode: a direction in waveguide 1 or 2.
struct Channel {
    int waveguide = 1;
    Direction direction = Direction::Right;

    /// Position in a ChannelAmplitudes / OutputReport vector: r1, l1, r2, l2.
    constexpr int index() const {
        return 2 * (waveguide - 1) + (direction == Direction::Left ? 1 : 0);
    }

    constexpr bool operator==(const Channel &) const = default;
};

inline constexpr Channel kR1{1, Direction::Right};
inline constexpr Channel kL1{1, Direction::Left};
inline constexpr Channel kR2{2, Direction::Right};
inline constexpr Channel kL2{2, Direction::Left};
inline constexpr std::array<Channel, 4> kChannels{kR1, kL1, kR2, kL2};

/// Throws InvalidArgument unless waveguide is 1 or 2.
Channel make_channel(int waveguide, Direction direction);

constexpr Channel channel_at(int index) { return kChannels[static_cast<std::size_t>(index)]; }

/// Label of the output port a channel exits through (circulator mapping).
/// r1 -> 2, l1 -> 1, r2 -> 4, l2 -> 3.
constexpr int port_of_output_channel(Channel ch) {
    constexpr std::array<int, 4> ports{2, 1, 4, 3};
    return ports[static_cast<std::size_t>(ch.index())];
}

/// Channel fed by an input port. 1 -> r1, 2 -> l1, 3 -> r2, 4 -> l2.
Channel channel_of_input_port(int port);

/// Inverse of port_of_output_channel.
Channel channel_of_output_port(int port);

std::string_view channel_name(Channel ch);

template <typename Scalar = double>
struct RouterParams {
    Scalar gamma1 = 1;
    Scalar gamma2 = 1;
    Scalar gamma_c = 0;  // decay into non-waveguide modes
    Scalar omega_c = 0;

    Scalar total_decay() const { return gamma1 + gamma2 + gamma_c; }
    bool lossless() const { return gamma_c == Scalar(0); }
};

/// Nullopt when the parameters are usable. Pure.
template <typename Scalar>
std::optional<ErrorCode> validate(const RouterParams<Scalar> &p) {
    using std::isfinite;
    if (!isfinite(p.gamma1) || !isfinite(p.gamma2) || !isfinite(p.gamma_c) || !isfinite(p.omega_c))
        return ErrorCode::NonFinite;
    if (!(p.gamma1 > Scalar(0))) return ErrorCode::NonPositiveGamma1;
    if (p.gamma2 < Scalar(0) || p.gamma_c < Scalar(0)) return ErrorCode::NegativeRate;
    return std::nullopt;
}

template <typename Scalar>
void require_valid(const RouterParams<Scalar> &p) {
    if (auto err = validate(p))
        throw RouterError(*err, "invalid router parameters: " + std::string(to_string(*err)));
}

template <typename Scalar = double>
using ChannelAmplitudes = Eigen::Matrix<std::complex<Scalar>, 4, 1>;

template <typename Scalar = double>
using ChannelFluxes = Eigen::Matrix<Scalar, 4, 1>;

/// Monochromatic coherent input on one channel.
template <typename Scalar = double>
struct CoherentDrive {
    Channel channel = kR1;
    std::complex<Scalar> amplitude{};
    Scalar delta = 0;

    Scalar mean_n() const { return std::norm(amplitude); }
};

/// Collects drives into one amplitude vector. All drives must share delta;
/// drives on the same channel add.
template <typename Scalar, typename Range>
ChannelAmplitudes<Scalar> amplitudes_from(const Range &drives) {
    ChannelAmplitudes<Scalar> amps = ChannelAmplitudes<Scalar>::Zero();
    bool first = true;
    Scalar delta{};
    for (const CoherentDrive<Scalar> &d : drives) {
        if (first) {
            delta = d.delta;
            first = false;
        } else if (d.delta != delta) {
            throw RouterError(ErrorCode::InvalidArgument, "coherent drives must share one frequency");
        }
        amps(d.channel.index()) += d.amplitude;
    }
    return amps;
}

/// Gaussian coherent wave packet with spectrum centred at omega0 and
/// half-bandwidth Omega.
template <typename Scalar = double>
struct WavePacket {
    Channel channel = kR1;
    Scalar mean_n = 1;
    Scalar omega0 = 0;
    Scalar bandwidth = Scalar(0.3);  // Omega; the full bandwidth is 2*Omega
    Scalar phase = 0;
};

/// Mean output photon numbers per channel.
template <typename Scalar = double>
struct OutputReport {
    ChannelFluxes<Scalar> n_out = ChannelFluxes<Scalar>::Zero();
    Scalar n_total = 0;
    Scalar n_in = 0;
    Scalar loss = 0;

    Scalar operator[](Channel ch) const { return n_out(ch.index()); }
    Scalar at_output_port(int port) const { return (*this)[channel_of_output_port(port)]; }

    static OutputReport from_fluxes(const ChannelFluxes<Scalar> &n, Scalar n_in) {
        OutputReport r;
        r.n_out = n;
        r.n_total = n.sum();
        r.n_in = n_in;
        r.loss = n_in - r.n_total;
        return r;
    }
};

/// |a - b| / max(|b|, scale). Used for every "relative" comparison so that
/// exact zeros are judged against the scenario's photon number.
template <typename Scalar>
Scalar relative_deviation(Scalar a, Scalar b, Scalar scale) {
    using std::abs;
    using std::max;
    Scalar denom = max(abs(b), abs(scale));
    if (denom == Scalar(0)) return abs(a - b);
    return abs(a - b) / denom;
}

/// Largest channel-wise relative deviation between two reports, scaled by
/// the reference report's injected photon number.
template <typename Scalar>
Scalar max_relative_deviation(const OutputReport<Scalar> &a, const OutputReport<Scalar> &ref) {
    Scalar worst = 0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, relative_deviation(a.n_out(i), ref.n_out(i), ref.n_in));
    return std::max(worst, relative_deviation(a.n_total, ref.n_total, ref.n_in));
}

}  // namespace router

#endif  // ROUTER_TYPES_HPP
