#include "router/verify.hpp"

#include "router/oracle.hpp"
#include "router/scattering.hpp"
#include "router/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace router {

namespace {

using std::numbers::pi;
using Params = RouterParams<double>;
using Report = OutputReport<double>;

constexpr std::uint64_t kSeed = 0x5eed'2015'0417ULL;

struct Draw {
    Params params;
    double mean_n;
    double delta;
    double a;  // phi or theta
    double b;  // theta_prime
};

struct Sampler {
    std::mt19937_64 rng{kSeed};

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

    Draw draw() {
        Draw d;
        const double g1 = uniform(0.2, 3.0);
        d.params = Params{g1, g1 * uniform(0.0, 5.0), 0.0, 0.0};
        d.mean_n = uniform(0.1, 10.0);
        d.delta = uniform(-10.0, 10.0);
        d.a = uniform(0.0, 2 * pi);
        d.b = uniform(0.0, 2 * pi);
        return d;
    }
};

SuiteResult upper(std::string name, std::string group, double metric, double bound, std::string detail) {
    return {std::move(name), std::move(group), metric, bound, false, metric <= bound, std::move(detail)};
}

SuiteResult conservation() {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Draw d = s.draw();
        ChannelAmplitudes<double> in;
        switch (i % 4) {
        case 0: in = single_input(d.mean_n); break;
        case 1: in = two_input(d.mean_n, d.a); break;
        case 2: in = three_input(d.mean_n, d.a, d.b); break;
        default:
            for (int k = 0; k < 4; ++k) in(k) = std::polar(s.uniform(0.0, 3.0), s.uniform(0.0, 2 * pi));
        }
        const Report r = scatter_report(d.params, in, d.delta);
        worst = std::max(worst, relative_deviation(r.n_total, r.n_in, r.n_in));
    }
    return upper("conservation", "scattering", worst, 1e-12, "sum |out|^2 vs sum |in|^2, 1000 lossless draws");
}

template <typename Closed, typename Inputs>
SuiteResult closed_form(std::string name, Closed closed, Inputs inputs) {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Draw d = s.draw();
        const Report analytic = closed(d);
        const Report general = scatter_report(d.params, inputs(d), d.delta);
        worst = std::max(worst, max_relative_deviation(analytic, general));
    }
    return upper(std::move(name), "scattering", worst, 1e-10, "closed form vs |scatter|^2, 1000 draws");
}

SuiteResult closed_single() {
    return closed_form(
        "closed_form_single", [](const Draw &d) { return mean_output_single(d.params, d.mean_n, d.delta); },
        [](const Draw &d) { return single_input(d.mean_n); });
}

SuiteResult closed_two() {
    return closed_form(
        "closed_form_two", [](const Draw &d) { return mean_output_two(d.params, d.mean_n, d.delta, d.a); },
        [](const Draw &d) { return two_input(d.mean_n, d.a); });
}

SuiteResult closed_three() {
    return closed_form(
        "closed_form_three",
        [](const Draw &d) { return mean_output_three(d.params, d.mean_n, d.delta, d.a, d.b); },
        [](const Draw &d) { return three_input(d.mean_n, d.a, d.b); });
}

SuiteResult reduction() {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        Draw d = s.draw();
        d.params.gamma2 = 0;
        const auto [r1, l1] = two_port_reduction(d.params.gamma1, d.mean_n, d.delta, d.a);
        const Report full = mean_output_two(d.params, d.mean_n, d.delta, d.a);
        worst = std::max({worst, std::abs(r1 - full[kR1]), std::abs(l1 - full[kL1])});
    }
    return upper("two_port_reduction", "scattering", worst, 1e-12, "gamma2=0 reduction vs two-input forms");
}

SuiteResult periodicity() {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const Draw d = s.draw();
        const Report a = mean_output_two(d.params, d.mean_n, d.delta, d.a);
        const Report b = mean_output_two(d.params, d.mean_n, d.delta, d.a + 2 * pi);
        const Report c = mean_output_three(d.params, d.mean_n, d.delta, d.a, d.b);
        const Report e = mean_output_three(d.params, d.mean_n, d.delta, d.a + 2 * pi, d.b);
        const Report f = mean_output_three(d.params, d.mean_n, d.delta, d.a, d.b + 2 * pi);
        worst = std::max({worst, max_relative_deviation(b, a), max_relative_deviation(e, c),
                          max_relative_deviation(f, c)});
    }
    return upper("phase_periodicity", "scattering", worst, 1e-12, "phase shifted by 2 pi");
}

SuiteResult symmetry_and_null() {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const Draw d = s.draw();
        const Report one = mean_output_single(d.params, d.mean_n, d.delta);
        const Report two = mean_output_two(d.params, d.mean_n, d.delta, d.a);
        const Report null = mean_output_two(d.params, d.mean_n, d.delta, pi);
        worst = std::max({worst, std::abs(one[kR2] - one[kL2]), std::abs(two[kR2] - two[kL2]),
                          std::abs(null[kR2]), std::abs(null[kL2])});
    }
    return upper("waveguide2_symmetry_and_null", "scattering", worst, 0.0,
                 "N_r2 == N_l2 for one/two inputs; N_r2 = N_l2 = 0 at phi = pi");
}

SuiteResult linearity_and_phase() {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const Draw d = s.draw();
        const double scale = s.uniform(0.01, 100.0);
        const Report a = mean_output_three(d.params, d.mean_n, d.delta, d.a, d.b);
        Report b = mean_output_three(d.params, scale * d.mean_n, d.delta, d.a, d.b);
        b.n_out /= scale;
        b.n_total /= scale;
        b.n_in /= scale;
        worst = std::max(worst, max_relative_deviation(b, a));

        const Report plain = scatter_report(d.params, single_input(d.mean_n), d.delta);
        const ChannelAmplitudes<double> rotated = single_input(d.mean_n) * std::polar(1.0, d.b);
        worst = std::max(worst, max_relative_deviation(scatter_report(d.params, rotated, d.delta), plain));

        Params sym = d.params;
        sym.gamma2 = sym.gamma1;
        ChannelAmplitudes<double> ports13 = ChannelAmplitudes<double>::Zero();
        ports13(kR1.index()) = std::sqrt(d.mean_n);
        ports13(kR2.index()) = std::polar(std::sqrt(d.mean_n), d.a);
        const Report r13 = scatter_report(sym, ports13, d.delta);
        const Report r12 = mean_output_two(sym, d.mean_n, d.delta, d.a);
        // Ports 1&3 reproduce the ports 1&2 numbers with waveguide-1 left and
        // waveguide-2 right outputs exchanged.
        ChannelFluxes<double> mapped;
        mapped << r13[kR1], r13[kR2], r13[kL1], r13[kL2];
        worst = std::max(worst, max_relative_deviation(Report::from_fluxes(mapped, r13.n_in), r12));
    }
    return upper("linearity_phase_ports13", "scattering", worst, 1e-12,
                 "mean_n scaling, global phase, ports 1&3 vs 1&2");
}

std::vector<WavePacket<double>> fig2a_packets(const Params &p, double phi, double W) {
    return two_packets(p, 1.0, 0.0, W, phi);
}

SuiteResult packet_conservation() {
    Sampler s;
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const Draw d = s.draw();
        const double W = s.uniform(0.05, 1.0);
        const Report r = packet_output_numbers(d.params, three_packets(d.params, d.mean_n, d.delta, W, d.a, d.b));
        worst = std::max(worst, relative_deviation(r.n_total, r.n_in, r.n_in));
    }
    return upper("packet_conservation", "wavepacket", worst, 1e-6, "gamma_c = 0 packets, n_total vs n_in");
}

SuiteResult packet_lossy_bounds() {
    const Params base{1.0, 1.0, 0.0, 0.0};
    double violation = 0;
    double previous = 0;
    for (int i = 0; i < 10; ++i) {
        Params p = base;
        p.gamma_c = (p.gamma1 + p.gamma2) * i / 9.0;
        const Report r = packet_output_numbers(p, fig2a_packets(p, 0.3, 0.3));
        violation = std::max({violation, -r.n_total, r.n_total - r.n_in - 1e-9});
        if (i > 0) violation = std::max(violation, r.n_total - previous);
        previous = r.n_total;
    }
    return upper("packet_lossy_bounds", "wavepacket", std::max(violation, 0.0), 0.0,
                 "0 <= n_total <= n_in, non-increasing over gamma_c in [0, gamma1+gamma2]");
}

SuiteResult packet_narrowband() {
    const Params p{1.0, 0.6, 0.0, 0.0};
    double worst = 0;
    for (double phi : {0.0, pi / 2, pi, 3 * pi / 2}) {
        const Report packet = packet_output_numbers(p, two_packets(p, 1.0, 0.5, 1e-3, phi));
        worst = std::max(worst, max_relative_deviation(packet, mean_output_two(p, 1.0, 0.5, phi)));
    }
    return upper("packet_narrowband_limit", "wavepacket", worst, 1e-4, "Omega = 1e-3 vs two-input closed form");
}

SuiteResult quadrature_checks() {
    const Params p{1.0, 1.0, 0.1, 0.0};
    const auto packets = fig2a_packets(p, 1.0, 0.3);
    QuadratureSpec q;
    const std::span<const WavePacket<double>> view(packets);
    const Report base = integrate_packets_fixed(p, view, q);
    QuadratureSpec halved = q;
    halved.points = 2 * q.points - 1;
    QuadratureSpec trap = q;
    trap.rule = QuadratureRule::Trapezoid;
    const double worst = std::max(max_relative_deviation(integrate_packets_fixed(p, view, halved), base),
                                  max_relative_deviation(integrate_packets_fixed(p, view, trap), base));
    return upper("quadrature_resolution", "wavepacket", worst, 1e-6, "step halving and Simpson vs trapezoid");
}

SuiteResult oracle_narrowband() {
    const Params p{1.0, 1.0, 0.0, 0.0};
    double worst = 0;
    for (double phi : {0.0, pi / 2, pi, 3 * pi / 2}) {
        const Report td = oracle_report(p, pulses_from(fig2a_packets(p, phi, 0.01)));
        worst = std::max(worst, max_relative_deviation(td, mean_output_two(p, 1.0, 0.0, phi)));
    }
    return upper("oracle_narrowband", "oracle", worst, 1e-3, "time domain, Omega = 0.01, vs two-input closed form");
}

SuiteResult oracle_broadband() {
    double worst = 0;
    for (const Params &p : {Params{1.0, 1.0, 0.1, 0.0}, Params{1.0, 0.6, 0.1, 0.0}, Params{1.0, 0.0, 0.1, 0.0}}) {
        for (double phi : {0.0, pi / 2, pi, 3 * pi / 2}) {
            const double delta = p.gamma2 == 1.0 ? 0.0 : (p.gamma2 == 0.0 ? 1.0 : 0.5);
            const auto packets = two_packets(p, 1.0, delta, 0.3, phi);
            const Report fd = packet_output_numbers(p, packets);
            const Report td = oracle_report(p, pulses_from(packets));
            worst = std::max(worst, max_relative_deviation(td, fd));
        }
    }
    return upper("oracle_vs_packet", "oracle", worst, 1e-4, "Omega = 0.3, gamma_c = 0.1, time vs frequency domain");
}

SuiteResult oracle_linearity() {
    const Params p{1.0, 0.6, 0.1, 0.0};
    auto packets = two_packets(p, 1.0, 0.5, 0.3, 1.0);
    const Report a = oracle_report(p, pulses_from(packets));
    const double s2 = 7.0;
    for (auto &pk : packets) pk.mean_n *= s2;
    Report b = oracle_report(p, pulses_from(packets));
    b.n_out /= s2;
    b.n_total /= s2;
    b.n_in /= s2;
    return upper("oracle_linearity", "oracle", max_relative_deviation(b, a), 1e-12, "amplitudes x s => N x s^2");
}

}  // namespace

/// Observed order from three step sizes h, h/2, h/4 on a smooth driven decay.
double measured_rk4_order() {
    const std::complex<double> rate(-2.0, -0.7);
    auto drive = [](double t) { return std::polar(std::exp(-(t - 2) * (t - 2)), -t); };
    auto final = [&](double dt) {
        const auto steps = static_cast<std::size_t>(std::llround(6.0 / dt));
        return rk4_linear(rate, drive, std::complex<double>{}, 0.0, dt, steps).back();
    };
    const auto c1 = final(0.1), c2 = final(0.05), c4 = final(0.025);
    return std::log2(std::abs(c1 - c2) / std::abs(c2 - c4));
}

namespace {

SuiteResult rk4_order() {
    const double order = measured_rk4_order();
    return {"rk4_order", "oracle", order, 3.8, true, order >= 3.8, "step halving h = 0.1, 0.05, 0.025"};
}

struct Suite {
    std::string_view name;
    std::string_view group;
    std::function<SuiteResult()> run;
};

const std::vector<Suite> &registry() {
    static const std::vector<Suite> suites{
        {"conservation", "scattering", conservation},
        {"closed_form_single", "scattering", closed_single},
        {"closed_form_two", "scattering", closed_two},
        {"closed_form_three", "scattering", closed_three},
        {"two_port_reduction", "scattering", reduction},
        {"phase_periodicity", "scattering", periodicity},
        {"waveguide2_symmetry_and_null", "scattering", symmetry_and_null},
        {"linearity_phase_ports13", "scattering", linearity_and_phase},
        {"packet_conservation", "wavepacket", packet_conservation},
        {"packet_lossy_bounds", "wavepacket", packet_lossy_bounds},
        {"packet_narrowband_limit", "wavepacket", packet_narrowband},
        {"quadrature_resolution", "wavepacket", quadrature_checks},
        {"oracle_narrowband", "oracle", oracle_narrowband},
        {"oracle_vs_packet", "oracle", oracle_broadband},
        {"oracle_linearity", "oracle", oracle_linearity},
        {"rk4_order", "oracle", rk4_order},
    };
    return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto &s : registry()) names.emplace_back(s.name);
    return names;
}

std::vector<SuiteResult> run_suites(std::string_view selection) {
    std::vector<SuiteResult> results;
    for (const auto &s : registry())
        if (selection == "all" || selection == s.group || selection == s.name) results.push_back(s.run());
    if (results.empty())
        throw RouterError(ErrorCode::InvalidArgument, "unknown verify suite '" + std::string(selection) + "'");
    return results;
}

}  // namespace router
