#include "router/wavepacket.hpp"

namespace router {

std::optional<ErrorCode> validate(const QuadratureSpec &q) {
    if (!std::isfinite(q.window_halfwidth) || q.window_halfwidth < 6) return ErrorCode::InvalidArgument;
    if (q.points < 2001 || q.points % 2 == 0) return ErrorCode::InvalidArgument;
    if (q.max_doublings < 0 || !(q.refinement_tolerance > 0)) return ErrorCode::InvalidArgument;
    return std::nullopt;
}

}  // namespace router
