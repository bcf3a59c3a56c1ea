#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "router/types.hpp"

#include <limits>
#include <set>
#include <vector>

using namespace router;

TEST_CASE("output channels map onto the circulator ports") {
    CHECK(port_of_output_channel(kR1) == 2);
    CHECK(port_of_output_channel(kL1) == 1);
    CHECK(port_of_output_channel(kR2) == 4);
    CHECK(port_of_output_channel(kL2) == 3);
}

TEST_CASE("input ports map onto channels") {
    CHECK(channel_of_input_port(1) == kR1);
    CHECK(channel_of_input_port(2) == kL1);
    CHECK(channel_of_input_port(3) == kR2);
    CHECK(channel_of_input_port(4) == kL2);
    CHECK_THROWS_AS(channel_of_input_port(0), RouterError);
    CHECK_THROWS_AS(channel_of_input_port(5), RouterError);
}

TEST_CASE("port mapping is a bijection and composes to the circulator permutation") {
    std::set<int> seen;
    for (Channel ch : kChannels) seen.insert(port_of_output_channel(ch));
    CHECK(seen == std::set<int>{1, 2, 3, 4});

    // A photon that stays in its channel leaves through the paired port.
    const int expected[] = {0, 2, 1, 4, 3};
    for (int port = 1; port <= 4; ++port)
        CHECK(port_of_output_channel(channel_of_input_port(port)) == expected[port]);
    for (int port = 1; port <= 4; ++port)
        CHECK(port_of_output_channel(channel_of_output_port(port)) == port);
}

TEST_CASE("channel indices follow r1 l1 r2 l2") {
    for (int i = 0; i < 4; ++i) CHECK(channel_at(i).index() == i);
    CHECK(make_channel(2, Direction::Left) == kL2);
    CHECK_THROWS_AS(make_channel(3, Direction::Left), RouterError);
    CHECK(channel_name(kR2) == "r2");
}

TEST_CASE("parameter validation") {
    CHECK_FALSE(validate(RouterParams<double>{1.0, 1.0, 0.0, 0.0}).has_value());
    CHECK_FALSE(validate(RouterParams<double>{1.0, 0.0, 0.0, 0.0}).has_value());
    CHECK(validate(RouterParams<double>{1.0, -0.1, 0.0, 0.0}) == ErrorCode::NegativeRate);
    CHECK(validate(RouterParams<double>{1.0, 1.0, -1e-3, 0.0}) == ErrorCode::NegativeRate);
    CHECK(validate(RouterParams<double>{0.0, 1.0, 0.0, 0.0}) == ErrorCode::NonPositiveGamma1);
    CHECK(validate(RouterParams<double>{-2.0, 1.0, 0.0, 0.0}) == ErrorCode::NonPositiveGamma1);
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK(validate(RouterParams<double>{1.0, inf, 0.0, 0.0}) == ErrorCode::NonFinite);
    CHECK(validate(RouterParams<double>{nan, 1.0, 0.0, 0.0}) == ErrorCode::NonFinite);
    CHECK(validate(RouterParams<double>{1.0, 1.0, 0.0, nan}) == ErrorCode::NonFinite);

    CHECK_THROWS_AS(require_valid(RouterParams<double>{0.0, 1.0, 0.0, 0.0}), RouterError);
}

TEST_CASE("validation is idempotent and leaves its input untouched") {
    const RouterParams<double> p{1.0, -0.1, 0.2, 0.3};
    const RouterParams<double> copy = p;
    CHECK(validate(p) == validate(p));
    CHECK(p.gamma1 == copy.gamma1);
    CHECK(p.gamma2 == copy.gamma2);
    CHECK(p.gamma_c == copy.gamma_c);
    CHECK(p.omega_c == copy.omega_c);
}

TEST_CASE("long double parameters") {
    CHECK_FALSE(validate(RouterParams<long double>{1.0L, 2.0L, 0.1L, 0.0L}).has_value());
}

TEST_CASE("drives collect into amplitudes") {
    const std::vector<CoherentDrive<double>> drives{
        {kR1, {1.0, 0.0}, 0.5}, {kL2, {0.0, 2.0}, 0.5}, {kR1, {0.5, 0.0}, 0.5}};
    const auto a = amplitudes_from<double>(drives);
    CHECK(a(0) == std::complex<double>(1.5, 0.0));
    CHECK(a(1) == std::complex<double>(0.0, 0.0));
    CHECK(a(3) == std::complex<double>(0.0, 2.0));
    CHECK(drives[1].mean_n() == doctest::Approx(4.0));

    const std::vector<CoherentDrive<double>> mixed{{kR1, {1.0, 0.0}, 0.5}, {kL1, {1.0, 0.0}, 0.6}};
    CHECK_THROWS_AS(amplitudes_from<double>(mixed), RouterError);
}

TEST_CASE("report totals and port lookup") {
    ChannelFluxes<double> n;
    n << 0.1, 0.2, 0.3, 0.4;
    const auto r = OutputReport<double>::from_fluxes(n, 1.5);
    CHECK(r.n_total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.loss == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.at_output_port(1) == 0.2);
    CHECK(r.at_output_port(2) == 0.1);
    CHECK(r.at_output_port(3) == 0.4);
    CHECK(r.at_output_port(4) == 0.3);
}

TEST_CASE("relative deviation falls back to the scale near zero") {
    CHECK(relative_deviation(1e-7, 0.0, 2.0) == doctest::Approx(5e-8));
    CHECK(relative_deviation(3.0, 2.0, 0.5) == doctest::Approx(0.5));
    CHECK(relative_deviation(1e-9, 0.0, 0.0) == doctest::Approx(1e-9));
}
