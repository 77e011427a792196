#include "jlcrit/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "jlcrit/errors.hpp"

namespace jlcrit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(int line, const std::string& what) {
    throw DomainError("config line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(const std::string& text, int line) {
    T v{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) bad_line(line, "not a number: '" + text + "'");
    return v;
}

}  // namespace

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string text = trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) bad_line(line, "expected key=value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (value.empty()) bad_line(line, "empty value for '" + key + "'");

        if (key == "tol") {
            const double t = parse_number<double>(value, line);
            if (!(t > 0.0) || !std::isfinite(t)) bad_line(line, "tol must be positive");
            cfg.tol = t;
        } else if (key == "samples") {
            const int n = parse_number<int>(value, line);
            if (n < 16) bad_line(line, "samples must be >= 16");
            cfg.samples = n;
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else {
            bad_line(line, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace jlcrit
