// route: command-line front end for the cavity photon router simulator.

#include "router/config.hpp"
#include "router/scenario.hpp"
#include "router/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerics = 3;

struct FlagSpec {
    const char *flag;
    const char *key;
    const char *help;
};

constexpr FlagSpec kScenarioFlags[] = {
    {"--gamma1", "gamma1", "coupling to waveguide 1 (unit of all rates, default 1)"},
    {"--gamma2", "gamma2", "coupling to waveguide 2 (default 1)"},
    {"--gamma-c", "gamma_c", "cavity decay into non-waveguide modes (default 0)"},
    {"--delta", "delta", "detuning omega_c - omega (default 0)"},
    {"--phi", "phi", "port-2 phase in radians (two-input case)"},
    {"--theta", "theta", "port-3 phase in radians (three-input case)"},
    {"--theta-prime", "theta_prime", "port-4 phase in radians (three-input case)"},
    {"--mean-n", "mean_n", "mean photon number per driven port (default 1)"},
    {"--omega0-detuning", "omega0_detuning", "packet centre detuning omega_c - omega0"},
    {"--bandwidth", "bandwidth", "packet half-bandwidth Omega; enables Gaussian packets"},
    {"--points", "points", "quadrature nodes, odd >= 2001 (default 4001)"},
};

constexpr FlagSpec kSweepFlags[] = {
    {"--case", "case", "input case: single | two | three"},
    {"--var", "var", "sweep variable: phi theta theta_prime delta gamma2 gamma_c Omega"},
    {"--start", "start", "sweep start"},
    {"--stop", "stop", "sweep stop"},
    {"--count", "count", "sweep points (>= 2)"},
    {"--var2", "var2", "second sweep variable (long-format surface)"},
    {"--start2", "start2", "second axis start"},
    {"--stop2", "stop2", "second axis stop"},
    {"--count2", "count2", "second axis points"},
};

struct Command {
    CLI::App *app = nullptr;
    std::map<std::string, std::string> values;  // key -> raw flag value
    std::map<std::string, const char *> flag_of;
    std::string out;
    std::string config;
    std::string trajectory;
    std::string suite = "all";
};

void add_flags(Command &cmd, std::span<const FlagSpec> flags) {
    for (const FlagSpec &f : flags) {
        cmd.app->add_option(f.flag, cmd.values[f.key], f.help);
        cmd.flag_of[f.key] = f.flag;
    }
}

Command make_command(CLI::App &root, const char *name, const char *description, bool sweep) {
    Command cmd;
    cmd.app = root.add_subcommand(name, description);
    add_flags(cmd, kScenarioFlags);
    if (sweep) add_flags(cmd, kSweepFlags);
    cmd.app->add_option("--out", cmd.out, "write CSV here instead of stdout");
    cmd.app->add_option("--config", cmd.config, "scenario file (key = value); flags override it");
    return cmd;
}

router::Settings resolve(const Command &cmd, std::optional<router::InputCase> fixed_case) {
    router::Settings st;
    if (!fixed_case) st.scenario.input_case = router::InputCase::Two;
    if (!cmd.config.empty()) router::apply_settings(st, router::load_config(cmd.config));
    if (fixed_case) st.scenario.input_case = *fixed_case;

    std::vector<router::SettingEntry> flags;
    for (const auto &[key, value] : cmd.values) {
        const char *flag = cmd.flag_of.at(key);
        if (cmd.app->count(flag) > 0) flags.push_back({key, value, flag});
    }
    router::apply_settings(st, flags);
    return st;
}

unsigned sweep_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("ROUTER_SIM_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end == cap || *end != '\0' || v < 1)
            throw router::RouterError(router::ErrorCode::InvalidArgument,
                                      "ROUTER_SIM_THREADS must be a positive integer");
        n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw router::RouterError(router::ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    f << text;
}

std::string verify_table(const std::vector<router::SuiteResult> &results, bool &all_passed) {
    std::ostringstream os;
    os << std::left << std::setw(30) << "suite" << std::setw(12) << "group" << std::setw(14) << "metric"
       << std::setw(16) << "bound" << "status\n";
    all_passed = true;
    for (const auto &r : results) {
        all_passed = all_passed && r.passed;
        std::ostringstream metric, bound;
        metric << std::setprecision(3) << std::scientific << r.metric;
        bound << (r.lower_bound ? ">= " : "<= ") << std::setprecision(3) << std::scientific << r.bound;
        os << std::setw(30) << r.name << std::setw(12) << r.group << std::setw(14) << metric.str() << std::setw(16)
           << bound.str() << (r.passed ? "PASS" : "FAIL") << '\n';
    }
    os << (all_passed ? "all suites passed\n" : "some suites FAILED\n");
    return os.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Cavity photon router: mean output photon numbers for coherent inputs"};
    app.require_subcommand(1);

    Command single = make_command(app, "single", "coherent input on port 1", false);
    Command two = make_command(app, "two", "coherent inputs on ports 1 and 2 (phase phi on port 2)", false);
    Command three = make_command(app, "three", "coherent inputs on ports 1, 3, 4 (phases theta, theta')", false);
    Command packet = make_command(app, "packet", "Gaussian wave packets with cavity decay", false);
    packet.app->add_option("--case", packet.values["case"], "input case: single | two | three (default two)");
    packet.flag_of["case"] = "--case";
    packet.app->add_option("--trajectory", packet.trajectory,
                           "also integrate in the time domain and write t,re_c,im_c,abs2_c here");
    Command sweep = make_command(app, "sweep", "parameter sweep, one CSV row per point", true);

    CLI::App *verify = app.add_subcommand("verify", "run the self-check suites");
    std::string suite = "all";
    std::string verify_out;
    verify->add_option("--suite", suite, "all | scattering | wavepacket | oracle | <suite name>");
    verify->add_option("--out", verify_out, "write the summary here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "route: error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            bool ok = false;
            emit(verify_out, verify_table(router::run_suites(suite), ok));
            return ok ? 0 : 1;
        }

        struct Choice {
            Command *cmd;
            std::optional<router::InputCase> fixed;
        };
        const Choice choices[] = {{&single, router::InputCase::Single},
                                  {&two, router::InputCase::Two},
                                  {&three, router::InputCase::Three},
                                  {&packet, std::nullopt},
                                  {&sweep, std::nullopt}};
        for (const Choice &c : choices) {
            if (!c.cmd->app->parsed()) continue;
            const router::Settings st = resolve(*c.cmd, c.fixed);
            std::vector<router::ScenarioResult> rows;
            if (c.cmd == &sweep) {
                rows = router::run_sweep(st.scenario, st.sweep_spec(), sweep_threads());
            } else {
                if (c.cmd == &packet && !st.scenario.packet_mode())
                    throw router::RouterError(router::ErrorCode::InvalidArgument, "packet needs --bandwidth");
                rows.push_back(router::evaluate(st.scenario));
            }
            std::ostringstream csv;
            router::write_csv(csv, rows);
            emit(c.cmd->out, csv.str());
            if (c.cmd == &packet && !packet.trajectory.empty()) {
                std::ostringstream traj;
                router::write_trajectory_csv(traj, router::trajectory_for(st.scenario));
                emit(packet.trajectory, traj.str());
            }
            return 0;
        }
    } catch (const router::RouterError &e) {
        std::cerr << "route: error: " << e.what() << '\n';
        switch (e.code()) {
        case router::ErrorCode::QuadratureUnderResolved:
        case router::ErrorCode::GridTooCoarse:
        case router::ErrorCode::PulseNotContained: return kExitNumerics;
        default: return kExitUsage;
        }
    } catch (const std::exception &e) {
        std::cerr << "route: error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
