#include "router/types.hpp"

namespace router {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPositiveGamma1: return "NonPositiveGamma1";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::LossyNotSupported: return "LossyNotSupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::PulseNotContained: return "PulseNotContained";
    }
    return "Unknown";
}

Channel make_channel(int waveguide, Direction direction) {
    if (waveguide != 1 && waveguide != 2)
        throw RouterError(ErrorCode::InvalidArgument, "waveguide index must be 1 or 2");
    return Channel{waveguide, direction};
}

Channel channel_of_input_port(int port) {
    if (port < 1 || port > 4)
        throw RouterError(ErrorCode::InvalidArgument, "input port must be in 1..4");
    return kChannels[static_cast<std::size_t>(port - 1)];
}

Channel channel_of_output_port(int port) {
    for (Channel ch : kChannels)
        if (port_of_output_channel(ch) == port) return ch;
    throw RouterError(ErrorCode::InvalidArgument, "output port must be in 1..4");
}

std::string_view channel_name(Channel ch) {
    constexpr std::array<std::string_view, 4> names{"r1", "l1", "r2", "l2"};
    return names[static_cast<std::size_t>(ch.index())];
}

}  // namespace router
