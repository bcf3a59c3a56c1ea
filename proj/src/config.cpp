#include "router/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace router {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void fail(const SettingEntry &e, const std::string &what) {
    throw RouterError(ErrorCode::InvalidArgument, e.origin + ": " + what);
}

double parse_double(const SettingEntry &e) {
    double v = 0;
    const char *b = e.value.data();
    const char *end = b + e.value.size();
    if (b != end && *b == '+') ++b;
    auto [ptr, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        fail(e, "value '" + e.value + "' for '" + e.key + "' is not a finite number");
    return v;
}

int parse_int(const SettingEntry &e) {
    int v = 0;
    const char *b = e.value.data();
    const char *end = b + e.value.size();
    auto [ptr, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || ptr != end) fail(e, "value '" + e.value + "' for '" + e.key + "' is not an integer");
    return v;
}

SweepVariable parse_var(const SettingEntry &e) {
    if (auto v = parse_sweep_variable(e.value)) return *v;
    fail(e, "unknown sweep variable '" + e.value + "'");
}

}  // namespace

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    if (key == "Omega") return "bandwidth";
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "omega") return "bandwidth";
    return key;
}

SweepSpec Settings::sweep_spec() const {
    if (!var) throw RouterError(ErrorCode::InvalidArgument, "sweep needs a variable (--var)");
    SweepSpec spec{{*var, start, stop, count}, std::nullopt};
    if (var2) spec.grid2 = SweepAxis{*var2, start2, stop2, count2};
    return spec;
}

std::vector<SettingEntry> parse_config(std::istream &in, const std::string &source) {
    std::vector<SettingEntry> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string origin = source + ":" + std::to_string(number);
        std::string_view view = line;
        if (number == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        const std::string body = trim(view);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw RouterError(ErrorCode::InvalidArgument, origin + ": expected 'key = value'");
        SettingEntry e{trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)),
                       origin};
        if (e.key.empty()) throw RouterError(ErrorCode::InvalidArgument, origin + ": missing key");
        if (e.value.empty()) throw RouterError(ErrorCode::InvalidArgument, origin + ": missing value for '" + e.key + "'");
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<SettingEntry> load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw RouterError(ErrorCode::InvalidArgument, "cannot read config file '" + path + "'");
    return parse_config(in, path);
}

void apply_settings(Settings &st, const std::vector<SettingEntry> &entries) {
    Scenario &s = st.scenario;
    for (const SettingEntry &e : entries) {
        const std::string key = normalize_key(e.key);
        if (key == "case") {
            auto c = parse_input_case(e.value);
            if (!c) fail(e, "unknown case '" + e.value + "' (single, two, three)");
            s.input_case = *c;
        } else if (key == "gamma1") {
            s.gamma1 = parse_double(e);
        } else if (key == "gamma2") {
            s.gamma2 = parse_double(e);
        } else if (key == "gamma_c") {
            s.gamma_c = parse_double(e);
        } else if (key == "delta") {
            s.delta = parse_double(e);
        } else if (key == "phi") {
            s.phi = parse_double(e);
        } else if (key == "theta") {
            s.theta = parse_double(e);
        } else if (key == "theta_prime") {
            s.theta_prime = parse_double(e);
        } else if (key == "mean_n") {
            s.mean_n = parse_double(e);
        } else if (key == "omega0_detuning") {
            s.omega0_detuning = parse_double(e);
        } else if (key == "bandwidth") {
            s.bandwidth = parse_double(e);
        } else if (key == "points") {
            s.points = parse_int(e);
        } else if (key == "var") {
            st.var = parse_var(e);
        } else if (key == "start") {
            st.start = parse_double(e);
        } else if (key == "stop") {
            st.stop = parse_double(e);
        } else if (key == "count") {
            st.count = parse_int(e);
        } else if (key == "var2") {
            st.var2 = parse_var(e);
        } else if (key == "start2") {
            st.start2 = parse_double(e);
        } else if (key == "stop2") {
            st.stop2 = parse_double(e);
        } else if (key == "count2") {
            st.count2 = parse_int(e);
        } else {
            fail(e, "unknown key '" + e.key + "'");
        }
    }
}

}  // namespace router
