#include "router/scenario.hpp"

#include "router/scattering.hpp"
#include "router/wavepacket.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <thread>

namespace router {

std::string_view to_string(InputCase c) {
    switch (c) {
    case InputCase::Single: return "single";
    case InputCase::Two: return "two";
    case InputCase::Three: return "three";
    }
    return "?";
}

std::optional<InputCase> parse_input_case(std::string_view name) {
    if (name == "single") return InputCase::Single;
    if (name == "two") return InputCase::Two;
    if (name == "three") return InputCase::Three;
    return std::nullopt;
}

namespace {

constexpr std::array<std::pair<SweepVariable, std::string_view>, 7> kVariableNames{{
    {SweepVariable::Phi, "phi"},
    {SweepVariable::Theta, "theta"},
    {SweepVariable::ThetaPrime, "theta_prime"},
    {SweepVariable::Delta, "delta"},
    {SweepVariable::Gamma2, "gamma2"},
    {SweepVariable::GammaC, "gamma_c"},
    {SweepVariable::Omega, "Omega"},
}};

ChannelAmplitudes<double> monochromatic_inputs(const Scenario &s) {
    switch (s.input_case) {
    case InputCase::Single: return single_input(s.mean_n);
    case InputCase::Two: return two_input(s.mean_n, s.phi);
    case InputCase::Three: return three_input(s.mean_n, s.theta, s.theta_prime);
    }
    return ChannelAmplitudes<double>::Zero();
}

std::vector<WavePacket<double>> packets_for(const Scenario &s, const RouterParams<double> &p) {
    const double delta_bar = s.effective_delta();
    const double W = *s.bandwidth;
    switch (s.input_case) {
    case InputCase::Single: return single_packet(p, s.mean_n, delta_bar, W);
    case InputCase::Two: return two_packets(p, s.mean_n, delta_bar, W, s.phi);
    case InputCase::Three: return three_packets(p, s.mean_n, delta_bar, W, s.theta, s.theta_prime);
    }
    return {};
}

}  // namespace

ScenarioResult evaluate(const Scenario &s) {
    const RouterParams<double> p = s.params();
    require_valid(p);
    if (!(s.mean_n >= 0) || !std::isfinite(s.mean_n))
        throw RouterError(ErrorCode::InvalidArgument, "mean_n must be finite and >= 0");

    ScenarioResult out{s, {}};
    if (s.packet_mode()) {
        QuadratureSpec q;
        q.points = s.points;
        out.report = packet_output_numbers(p, packets_for(s, p), q);
        out.scenario.delta = s.effective_delta();
        return out;
    }
    if (!p.lossless()) {
        out.report = scatter_report(p, monochromatic_inputs(s), s.delta);
        return out;
    }
    switch (s.input_case) {
    case InputCase::Single: out.report = mean_output_single(p, s.mean_n, s.delta); break;
    case InputCase::Two: out.report = mean_output_two(p, s.mean_n, s.delta, s.phi); break;
    case InputCase::Three: out.report = mean_output_three(p, s.mean_n, s.delta, s.theta, s.theta_prime); break;
    }
    return out;
}

std::string_view to_string(SweepVariable v) {
    for (const auto &[var, name] : kVariableNames)
        if (var == v) return name;
    return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
    for (const auto &[var, n] : kVariableNames)
        if (n == name) return var;
    if (name == "theta-prime") return SweepVariable::ThetaPrime;
    if (name == "gamma-c") return SweepVariable::GammaC;
    if (name == "bandwidth") return SweepVariable::Omega;
    return std::nullopt;
}

double SweepAxis::value(int i) const {
    if (i == count - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void validate(const SweepSpec &spec) {
    auto check = [](const SweepAxis &a) {
        if (!std::isfinite(a.start) || !std::isfinite(a.stop) || !(a.start < a.stop))
            throw RouterError(ErrorCode::InvalidArgument, "sweep needs finite start < stop");
        if (a.count < 2 || a.count > 1'000'000)
            throw RouterError(ErrorCode::InvalidArgument, "sweep count must be in [2, 1000000]");
    };
    check(spec.axis);
    if (spec.grid2) {
        check(*spec.grid2);
        if (spec.grid2->variable == spec.axis.variable)
            throw RouterError(ErrorCode::InvalidArgument, "sweep variables must be distinct");
    }
}

void set_variable(Scenario &s, SweepVariable v, double value) {
    switch (v) {
    case SweepVariable::Phi: s.phi = value; break;
    case SweepVariable::Theta: s.theta = value; break;
    case SweepVariable::ThetaPrime: s.theta_prime = value; break;
    case SweepVariable::Delta:
        s.delta = value;
        s.omega0_detuning.reset();
        break;
    case SweepVariable::Gamma2: s.gamma2 = value; break;
    case SweepVariable::GammaC: s.gamma_c = value; break;
    case SweepVariable::Omega: s.bandwidth = value; break;
    }
}

std::vector<ScenarioResult> run_sweep(const Scenario &base, const SweepSpec &spec, unsigned threads) {
    validate(spec);
    const int inner = spec.grid2 ? spec.grid2->count : 1;
    const std::size_t total = static_cast<std::size_t>(spec.axis.count) * static_cast<std::size_t>(inner);
    if (total > 1'000'000)
        throw RouterError(ErrorCode::InvalidArgument, "sweep grid exceeds 1000000 points");

    std::vector<Scenario> points;
    points.reserve(total);
    for (int i = 0; i < spec.axis.count; ++i) {
        for (int j = 0; j < inner; ++j) {
            Scenario s = base;
            set_variable(s, spec.axis.variable, spec.axis.value(i));
            if (spec.grid2) set_variable(s, spec.grid2->variable, spec.grid2->value(j));
            points.push_back(s);
        }
    }

    std::vector<ScenarioResult> rows(total);
    std::vector<std::exception_ptr> errors(total);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            try {
                rows[k] = evaluate(points[k]);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, total));
    if (workers == 1) {
        work(0, total);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t b = w * chunk, e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }
    for (const auto &err : errors)
        if (err) std::rethrow_exception(err);
    return rows;
}

std::string format_number(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) return "nan";
    return std::string(buf.data(), ptr);
}

std::string csv_row(const ScenarioResult &r) {
    const Scenario &s = r.scenario;
    const OutputReport<double> &rep = r.report;
    const bool two = s.input_case == InputCase::Two;
    const bool three = s.input_case == InputCase::Three;
    std::string row;
    auto field = [&row](const std::string &v) {
        if (!row.empty()) row += ',';
        row += v;
    };
    field(std::string(to_string(s.input_case)));
    field(format_number(s.gamma1));
    field(format_number(s.gamma2));
    field(format_number(s.gamma_c));
    field(format_number(s.effective_delta()));
    row += ',';
    if (two) row += format_number(s.phi);
    row += ',';
    if (three) row += format_number(s.theta);
    row += ',';
    if (three) row += format_number(s.theta_prime);
    row += ',';
    if (s.bandwidth) row += format_number(*s.bandwidth);
    field(format_number(s.mean_n));
    for (Channel ch : kChannels) field(format_number(rep[ch]));
    field(format_number(rep.n_total));
    field(format_number(rep.loss));
    return row;
}

void write_csv(std::ostream &os, const std::vector<ScenarioResult> &rows) {
    os << kCsvHeader << '\n';
    for (const auto &r : rows) os << csv_row(r) << '\n';
}

CavityTrajectory<double> trajectory_for(const Scenario &s) {
    if (!s.packet_mode())
        throw RouterError(ErrorCode::InvalidArgument, "trajectory output needs a packet scenario (--bandwidth)");
    const RouterParams<double> p = s.params();
    require_valid(p);
    const auto pulses = pulses_from(packets_for(s, p));
    return integrate_cavity(p, pulses, default_grid(p, pulses));
}

void write_trajectory_csv(std::ostream &os, const CavityTrajectory<double> &traj) {
    os << "t,re_c,im_c,abs2_c\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const std::complex<double> c = traj.lab(i);
        os << format_number(traj.time(i)) << ',' << format_number(c.real()) << ',' << format_number(c.imag()) << ','
           << format_number(std::norm(c)) << '\n';
    }
}

}  // namespace router
