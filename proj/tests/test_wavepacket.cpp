#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "router/wavepacket.hpp"

#include <numbers>

using namespace router;
using std::numbers::pi;
using Params = RouterParams<double>;
using Report = OutputReport<double>;

TEST_CASE("gaussian spectrum shape") {
    const WavePacket<double> pk{kR1, 2.0, 0.3, 0.25, 1.1};
    const double peak = std::norm(gaussian_spectrum(pk, 0.3));
    CHECK(peak == doctest::Approx(2.0 / std::sqrt(2 * pi * 0.25 * 0.25)).epsilon(1e-14));
    CHECK(std::norm(gaussian_spectrum(pk, 0.3 + 0.5)) / peak == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
    CHECK(std::norm(gaussian_spectrum(pk, 0.3 - 0.5)) / peak == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
    CHECK(std::arg(gaussian_spectrum(pk, 0.3)) == doctest::Approx(1.1));
}

TEST_CASE("quadrature of the spectrum recovers the mean photon number") {
    for (double W : {1e-3, 0.3, 5.0}) {
        const WavePacket<double> pk{kL2, 1.0, -2.0, W, 0.0};
        const QuadratureSpec q;
        const double half = q.window_halfwidth * W;
        const double h = 2 * half / (q.points - 1);
        const auto w = quadrature_weights(q.points, h, q.rule);
        double sum = 0;
        for (int i = 0; i < q.points; ++i) sum += w[static_cast<std::size_t>(i)] * std::norm(gaussian_spectrum(pk, pk.omega0 - half + i * h));
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

TEST_CASE("quadrature spec validation") {
    CHECK_FALSE(validate(QuadratureSpec{}).has_value());
    QuadratureSpec q;
    q.points = 4000;
    CHECK(validate(q).has_value());
    q.points = 1001;
    CHECK(validate(q).has_value());
    q = {};
    q.window_halfwidth = 5;
    CHECK(validate(q).has_value());
}

TEST_CASE("packet inputs are checked") {
    const Params p{1.0, 1.0, 0.0, 0.0};
    std::vector<WavePacket<double>> pk{{kR1, 1.0, 0.0, 0.3, 0.0}, {kL1, 1.0, 0.1, 0.3, 0.0}};
    CHECK_THROWS_AS(packet_output_numbers(p, pk), RouterError);
    pk[1].omega0 = 0.0;
    pk[1].bandwidth = 0.2;
    CHECK_THROWS_AS(packet_output_numbers(p, pk), RouterError);
    pk[1].bandwidth = 0.0;
    pk[0].bandwidth = 0.0;
    CHECK_THROWS_AS(packet_output_numbers(p, pk), RouterError);
    CHECK_THROWS_AS(packet_output_numbers(Params{1.0, -1.0, 0.0, 0.0}, two_packets(p, 1.0, 0.0, 0.3, 0.0)),
                    RouterError);
    const Report empty = packet_output_numbers(p, std::vector<WavePacket<double>>{});
    CHECK(empty.n_total == 0.0);
}

TEST_CASE("Fig. 4 anchors against an independent adaptive quadrature") {
    // Expected values: arbitrary-precision adaptive Gauss-Legendre integration
    // of |scatter(alpha_omega)|^2, computed outside this code base.
    struct Case {
        Params p;
        double delta;
        double phi;
        double n[4];
    };
    const Case cases[] = {
        {{1.0, 1.0, 0.1, 0.0}, 0.0, 0.0, {0.0214945917564745, 0.0214945917564745, 0.8895503711304777, 0.8895503711304777}},
        {{1.0, 1.0, 0.1, 0.0}, 0.0, pi, {1.0, 1.0, 0.0, 0.0}},
        {{1.0, 0.6, 0.1, 0.0}, 0.5, pi / 2, {0.2662145871627007, 0.8590687905137141, 0.3748785524243936, 0.3748785524243936}},
        {{1.0, 0.0, 0.1, 0.0}, 1.0, pi / 2, {0.04818574217360288, 1.765932662590997, 0.0, 0.0}},
    };
    for (const Case &c : cases) {
        const Report r = packet_output_numbers(c.p, two_packets(c.p, 1.0, c.delta, 0.3, c.phi));
        for (int i = 0; i < 4; ++i) CHECK(std::abs(r.n_out(i) - c.n[i]) < 1e-9);
        CHECK(r.n_in == 2.0);
    }
}

TEST_CASE("destructive interference is immune to cavity decay, constructive is not") {
    const Params p{1.0, 1.0, 0.1, 0.0};
    const Report null = packet_output_numbers(p, two_packets(p, 1.0, 0.0, 0.3, pi));
    CHECK(std::abs(null.n_total - 2.0) < 1e-6);
    const Report bright = packet_output_numbers(p, two_packets(p, 1.0, 0.0, 0.3, 2 * pi));
    CHECK(bright.n_total < 2.0 - 0.05);
    CHECK(bright.loss > 0.05);
}

TEST_CASE("narrow packets approach the monochromatic closed form") {
    const Params p{1.0, 0.6, 0.0, 0.0};
    for (double phi : {0.0, 1.0, pi / 2, pi, 4.5}) {
        const Report packet = packet_output_numbers(p, two_packets(p, 1.0, 0.5, 1e-3, phi));
        const Report mono = mean_output_two(p, 1.0, 0.5, phi);
        CHECK(max_relative_deviation(packet, mono) < 1e-4);
    }

    // Error against the closed form shrinks monotonically with Omega.
    double previous = 1e300;
    for (double W : {0.3, 0.1, 0.03, 0.01}) {
        const Report packet = packet_output_numbers(p, two_packets(p, 1.0, 0.5, W, 1.0));
        const double err = max_relative_deviation(packet, mean_output_two(p, 1.0, 0.5, 1.0));
        CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("lossless packets conserve photon number") {
    const Params p{1.0, 2.5, 0.0, 0.3};
    for (double W : {0.05, 0.3, 2.0}) {
        const Report r = packet_output_numbers(p, three_packets(p, 0.7, -1.5, W, 0.4, 2.2));
        CHECK(relative_deviation(r.n_total, r.n_in, r.n_in) < 1e-6);
        CHECK(r.n_in == doctest::Approx(2.1));
    }
}

TEST_CASE("lossy packets stay within bounds and lose more as gamma_c grows toward gamma1+gamma2") {
    const Params base{1.0, 1.0, 0.0, 0.0};
    double previous = 1e300;
    for (int i = 0; i < 10; ++i) {
        Params p = base;
        p.gamma_c = 2.0 * i / 9.0;
        const Report r = packet_output_numbers(p, two_packets(p, 1.0, 0.2, 0.3, 0.7));
        CHECK(r.n_total >= 0.0);
        CHECK(r.n_total <= r.n_in + 1e-9);
        CHECK(r.loss >= -1e-9);
        CHECK(r.n_total <= previous);
        previous = r.n_total;
    }
}

TEST_CASE("bandwidth lowers the constructive peak but not the destructive plateau") {
    const Params p{1.0, 1.0, 0.1, 0.0};
    double peak_r2 = 0;
    for (int i = 0; i <= 64; ++i) {
        const double phi = 2 * pi * i / 64;
        peak_r2 = std::max(peak_r2, packet_output_numbers(p, two_packets(p, 1.0, 0.0, 0.3, phi))[kR2]);
    }
    CHECK(peak_r2 < 1.0);
    CHECK(packet_output_numbers(p, two_packets(p, 1.0, 0.0, 0.3, pi))[kR1] >= 0.98);
}

TEST_CASE("Simpson and trapezoid agree and step halving is stable") {
    const Params p{1.0, 0.6, 0.1, 0.0};
    const auto packets = two_packets(p, 1.0, 0.5, 0.3, 2.0);
    const std::span<const WavePacket<double>> view(packets);
    QuadratureSpec q;
    const Report simpson = integrate_packets_fixed(p, view, q);
    q.rule = QuadratureRule::Trapezoid;
    CHECK(max_relative_deviation(integrate_packets_fixed(p, view, q), simpson) < 1e-6);
    q.rule = QuadratureRule::Simpson;
    q.points = 8001;
    CHECK(max_relative_deviation(integrate_packets_fixed(p, view, q), simpson) < 1e-6);
}

TEST_CASE("unresolvable quadrature is reported") {
    // A cavity line far narrower than the node spacing cannot converge.
    QuadratureSpec q;
    q.max_doublings = 1;
    q.refinement_tolerance = 1e-15;
    const Params p{1e-6, 0.0, 0.0, 0.0};
    const auto packets = single_packet(p, 1.0, 0.0, 5.0);
    try {
        packet_output_numbers(p, packets, q);
        FAIL("expected QuadratureUnderResolved");
    } catch (const RouterError &e) {
        CHECK(e.code() == ErrorCode::QuadratureUnderResolved);
    }
}

TEST_CASE("results are deterministic") {
    const Params p{1.0, 0.6, 0.1, 0.0};
    const auto packets = three_packets(p, 1.0, 0.5, 0.3, 1.0, 2.0);
    const Report a = packet_output_numbers(p, packets);
    const Report b = packet_output_numbers(p, packets);
    for (int i = 0; i < 4; ++i) CHECK(a.n_out(i) == b.n_out(i));
}
