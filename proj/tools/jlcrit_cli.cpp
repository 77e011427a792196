// jlcrit: classify, exponents, thresholds, scan, selftest.
// Exit codes: 0 success, 1 internal failure, 2 input or domain error.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jlcrit/config.hpp"
#include "jlcrit/errors.hpp"
#include "jlcrit/exponents.hpp"
#include "jlcrit/phase_diagram.hpp"
#include "jlcrit/selftest.hpp"
#include "jlcrit/singular.hpp"

namespace {

using namespace jlcrit;
using ojson = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInput = 2;

// Raised for a well-formed request that has no answer (undefined threshold).
struct Undefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Inputs {
    std::optional<int> N;
    std::optional<double> s;
    std::optional<double> ell;
    std::optional<double> p;
    std::optional<double> tol;
    std::string format;
    std::string out;
    std::string config;
    std::vector<std::string> grids;
    std::vector<std::string> want;
};

struct Settings {
    double tol = kDefaultTol;
    int samples = 4096;
    std::string out_dir;
};

Settings resolve(const Inputs& in) {
    Settings st;
    if (!in.config.empty()) {
        const RunConfig cfg = load_config(in.config);
        if (cfg.tol) st.tol = *cfg.tol;
        if (cfg.samples) st.samples = *cfg.samples;
        if (cfg.out_dir) st.out_dir = *cfg.out_dir;
    }
    if (in.tol) {
        if (!(*in.tol > 0.0)) throw DomainError("--tol must be positive");
        st.tol = *in.tol;
    }
    return st;
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
    if (!v) throw DomainError(std::string("missing required flag ") + flag);
    return *v;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? format_real(*v) : "n/a"; }

ojson exponent_json(const Exponent& e) { return e.is_finite() ? ojson(e.value()) : ojson("inf"); }

bool want_json(const std::string& format) {
    if (format.empty() || format == "text") return false;
    if (format == "json") return true;
    throw DomainError("unknown format '" + format + "' (expected text or json)");
}

int cmd_classify(const Inputs& in) {
    const Settings st = resolve(in);
    ProblemParams pp{need(in.N, "--N"), need(in.s, "--s"), in.ell.value_or(0.0), need(in.p, "--p")};
    pp.validate();
    const bool json = want_json(in.format);
    const double p = *pp.p;

    const Classification c = classify(pp, st.tol);
    const double pS = sobolev_exponent(pp.N, pp.s, pp.ell);
    const double th = theta0(pp.s, pp.ell, p);
    std::optional<double> A0;
    if (p > (pp.N + pp.ell) / (pp.N - 2.0 * pp.s)) A0 = build_singular(pp).A0;
    std::optional<bool> stable;
    if (p > pS) stable = is_singular_solution_stable(pp, st.tol).stable;

    if (json) {
        ojson out;
        out["N"] = pp.N;
        out["s"] = pp.s;
        out["l"] = pp.ell;
        out["p"] = p;
        out["label"] = to_string(c.label);
        out["margin"] = c.margin ? ojson(*c.margin) : ojson(nullptr);
        out["p_S"] = pS;
        out["theta0"] = th;
        out["A0"] = A0 ? ojson(*A0) : ojson(nullptr);
        out["stable"] = stable ? ojson(*stable) : ojson(nullptr);
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "label=" << to_string(c.label) << " margin=" << fmt_opt(c.margin)
                  << " p_S=" << format_real(pS) << " theta0=" << format_real(th) << " A0=" << fmt_opt(A0)
                  << " stable=" << (stable ? (*stable ? "yes" : "no") : "n/a") << '\n';
    }
    return kOk;
}

int cmd_exponents(const Inputs& in) {
    const Settings st = resolve(in);
    ProblemParams pp{need(in.N, "--N"), need(in.s, "--s"), in.ell.value_or(0.0), std::nullopt};
    pp.validate();
    const bool json = want_json(in.format);
    const CriticalSet set = jl_critical_set(pp.N, pp.s, pp.ell, {st.samples, st.tol});
    const auto window = supercritical_window(set);

    if (json) {
        ojson out;
        out["N"] = set.N;
        out["s"] = set.s;
        out["l"] = set.ell;
        out["p_sobolev"] = set.p_sobolev;
        ojson crossings = ojson::array();
        for (const auto& c : set.crossings) {
            crossings.push_back({{"x", c.x},
                                 {"p", exponent_json(c.p)},
                                 {"multiplicity", c.multiplicity},
                                 {"tangential", c.tangential}});
        }
        out["crossings"] = crossings;
        ojson labels = ojson::array();
        for (Label l : set.intervals) labels.push_back(to_string(l));
        out["intervals"] = labels;
        if (window) {
            ojson w = ojson::array();
            for (const auto& e : *window) w.push_back(exponent_json(e));
            out["window"] = w;
        }
        std::cout << out.dump(1) << '\n';
        return kOk;
    }

    std::cout << "p_S = " << format_real(set.p_sobolev) << '\n';
    if (set.all_subcritical()) {
        std::cout << "no critical exponent; all p subcritical\n";
        return kOk;
    }
    std::vector<std::string> bounds{"p_S"};
    for (std::size_t i = 0; i < set.crossings.size(); ++i) {
        const auto& c = set.crossings[i];
        const std::string name = "p" + std::to_string(i + 1);
        std::cout << name << " = " << c.p.to_string() << " (x = " << format_real(c.x)
                  << ", multiplicity " << c.multiplicity << (c.tangential ? ", tangential" : "") << ")\n";
        bounds.push_back(name);
    }
    bounds.push_back("inf");
    for (std::size_t i = 0; i < set.intervals.size(); ++i) {
        std::cout << "(" << bounds[i] << ", " << bounds[i + 1] << "): " << to_string(set.intervals[i]) << '\n';
    }
    if (window) {
        std::cout << "window p1..p4 = " << (*window)[0].to_string() << ", " << (*window)[1].to_string() << ", "
                  << (*window)[2].to_string() << ", " << (*window)[3].to_string() << '\n';
    }
    return kOk;
}

struct Threshold {
    std::string name;
    std::string hypothesis;
    std::function<double()> compute;
    std::function<std::string()> undefined_reason;  ///< empty string: defined
};

std::vector<Threshold> threshold_table(const Inputs& in) {
    const auto N = in.N;
    const auto s = in.s;
    const auto ell = in.ell;
    const bool ell_zero = !ell || *ell == 0.0;
    std::vector<Threshold> t;

    t.push_back({"s_N", "l = 0, N in {8, 9}: the unique s in (0,1) where H_0(., N) changes sign",
                 [=] { return s_threshold(*N); },
                 [=]() -> std::string {
                     if (!N) return "requires --N";
                     if (!ell_zero) return "defined only for l = 0";
                     if (*N >= 1 && *N <= 7) return "for N <= 7 and l = 0, p_JL is infinite for every s";
                     if (*N >= 10) return "for N >= 10 and l = 0, p_JL is finite for every s";
                     return "";
                 }});
    t.push_back({"t_N", "l = 0, N >= 8: the minimiser of H_0(., N) on (0, 1]",
                 [=] { return t_turning(*N); },
                 [=]() -> std::string {
                     if (!N) return "requires --N";
                     if (!ell_zero) return "defined only for l = 0";
                     if (*N < 8) return "requires N >= 8";
                     return "";
                 }});
    const auto neg_reason = [=]() -> std::string {
        if (!N || !ell) return "requires --N and --l";
        if (!(*ell < 0.0 && *ell > -2.0)) return "requires -2 < l < 0";
        if (*N == 1 && !(*ell > -1.0)) return "for N = 1 requires -1 < l < 0";
        if (*N >= 2 && !(*N < 10.0 + 4.0 * *ell)) return "requires N < 10 + 4l";
        return "";
    };
    t.push_back({"s_N_l", "-2 < l < 0, N < 10 + 4l: first sign change of H_l(., N)",
                 [=] { return s_thresholds_neg_ell(*N, *ell).lower; }, neg_reason});
    t.push_back({"s~_N_l", "-2 < l < 0, N < 10 + 4l: last sign change of H_l(., N)",
                 [=] { return s_thresholds_neg_ell(*N, *ell).upper; }, neg_reason});
    const auto ell_reason = [=]() -> std::string {
        if (!N || !s) return "requires --N and --s";
        if (*N < 8) return "requires N >= 8";
        try {
            ell_thresholds(*N, *s);
        } catch (const DomainError& e) {
            return e.what();
        }
        return "";
    };
    t.push_back({"l1", "N >= 8, g_0(A) < M~: l where g_l(A) = M~",
                 [=] { return ell_thresholds(*N, *s).ell1; }, ell_reason});
    t.push_back({"l2", "N >= 8, g_0(A) < M~: maximum of L on (x~, A); supercritical window for l in (l1, l2)",
                 [=] { return ell_thresholds(*N, *s).ell2; }, ell_reason});
    t.push_back({"l3", "N >= 8, g_0(A) < M~: all p subcritical for l >= l3",
                 [=] { return ell_thresholds(*N, *s).ell3; }, ell_reason});
    t.push_back({"N_star", "0 < s < 1, l > -2s: smallest N with H_l(s, N) < 0",
                 [=] { return static_cast<double>(N_star(*s, ell.value_or(0.0))); },
                 [=]() -> std::string {
                     if (!s) return "requires --s";
                     validate_setting(3.0, *s, ell.value_or(0.0));
                     return "";
                 }});
    return t;
}

int cmd_thresholds(const Inputs& in) {
    resolve(in);
    if (in.N && *in.N < 1) {
        throw DomainError("domain violation: requires N >= 1 (got N=" + std::to_string(*in.N) + ")");
    }
    // N = 3 stands in when N is absent: it never violates N > 2s.
    if (in.s) validate_setting(in.N.value_or(3), *in.s, in.ell.value_or(0.0));
    const bool json = want_json(in.format);
    const auto table = threshold_table(in);

    std::vector<const Threshold*> chosen;
    for (const auto& name : in.want) {
        const Threshold* hit = nullptr;
        for (const auto& t : table) {
            if (t.name == name) hit = &t;
        }
        if (!hit) throw DomainError("unknown threshold '" + name + "'");
        if (const std::string why = hit->undefined_reason(); !why.empty()) {
            throw Undefined(name + " is undefined for these inputs: " + why + " (" + hit->hypothesis + ")");
        }
        chosen.push_back(hit);
    }
    if (in.want.empty()) {
        for (const auto& t : table) {
            if (t.undefined_reason().empty()) chosen.push_back(&t);
        }
        if (chosen.empty()) throw Undefined("no threshold is defined for these inputs");
    }

    ojson arr = ojson::array();
    for (const Threshold* t : chosen) {
        const double v = t->compute();
        if (json) {
            arr.push_back({{"name", t->name}, {"value", v}, {"hypothesis", t->hypothesis}});
        } else {
            std::cout << t->name << " = " << format_real(v) << "    [" << t->hypothesis << "]\n";
        }
    }
    if (json) std::cout << arr.dump(1) << '\n';
    return kOk;
}

int cmd_scan(const Inputs& in) {
    const Settings st = resolve(in);
    ScanSpec spec;
    spec.N = need(in.N, "--N");
    for (const auto& g : in.grids) spec.axes.push_back(parse_grid(g));
    if (in.s) spec.s = *in.s;
    if (in.ell) spec.ell = *in.ell;
    spec.p = in.p;
    spec.tol = st.tol;
    spec.samples = st.samples;
    spec.format = parse_format(in.format.empty() ? "csv" : in.format);
    if (!spec.has_axis(Axis::s) && !in.s) throw DomainError("scan: --s is required when s is not a scan axis");
    spec.validate();

    const std::string text = render(run_scan(spec));
    std::filesystem::path out = in.out;
    if (out.empty() && !st.out_dir.empty()) {
        out = std::string("phase_diagram.") + (spec.format == Format::json ? "json" : "csv");
    }
    if (out.empty()) {
        std::cout << text;
        return kOk;
    }
    if (out.is_relative() && !st.out_dir.empty()) out = std::filesystem::path(st.out_dir) / out;
    write_file_atomically(out, text);
    std::cerr << "wrote " << out.string() << '\n';
    return kOk;
}

int cmd_selftest(const Inputs& in) {
    const Settings st = resolve(in);
    SelftestOptions opts;
    opts.tol = st.tol;
    if (!st.out_dir.empty()) opts.scratch_dir = st.out_dir;
    const auto results = run_selftest(opts);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << format_check(r) << '\n';
        if (!r.pass) ++failed;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
    return failed == 0 ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joseph-Lundgren criticality for (-Delta)^s u = |x|^l |u|^{p-1} u"};
    app.require_subcommand(1);
    Inputs in;

    const auto add_point = [&in](CLI::App* sub) {
        sub->add_option("--N", in.N, "dimension N >= 1");
        sub->add_option("--s", in.s, "order s in (0, 1)");
        sub->add_option("--l", in.ell, "weight exponent l > -2s");
    };
    const auto add_common = [&in](CLI::App* sub) {
        sub->add_option("--tol", in.tol, "relative Critical band");
        sub->add_option("--config", in.config, "key=value file (tol, samples, out_dir)");
    };

    auto* classify_cmd = app.add_subcommand("classify", "classify one point (N, s, l, p)");
    add_point(classify_cmd);
    classify_cmd->add_option("--p", in.p, "exponent p > 1");
    classify_cmd->add_option("--format", in.format, "text | json");
    add_common(classify_cmd);

    auto* exponents_cmd = app.add_subcommand("exponents", "all JL-critical exponents for (N, s, l)");
    add_point(exponents_cmd);
    exponents_cmd->add_option("--format", in.format, "text | json");
    add_common(exponents_cmd);

    auto* thresholds_cmd = app.add_subcommand("thresholds", "threshold curves defined for the inputs");
    add_point(thresholds_cmd);
    thresholds_cmd->add_option("--want", in.want,
                               "s_N, t_N, s_N_l, s~_N_l, l1, l2, l3, N_star (repeatable)");
    thresholds_cmd->add_option("--format", in.format, "text | json");
    add_common(thresholds_cmd);

    auto* scan_cmd = app.add_subcommand("scan", "phase diagram over one or two of s, l, p");
    add_point(scan_cmd);
    scan_cmd->add_option("--p", in.p, "fixed p when p is not an axis");
    scan_cmd->add_option("--grid", in.grids, "axis=min:max:count (one or two)");
    scan_cmd->add_option("--format", in.format, "csv | json");
    scan_cmd->add_option("--out", in.out, "output file (written atomically)");
    add_common(scan_cmd);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance checks");
    add_common(selftest_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (app.got_subcommand(classify_cmd)) return cmd_classify(in);
        if (app.got_subcommand(exponents_cmd)) return cmd_exponents(in);
        if (app.got_subcommand(thresholds_cmd)) return cmd_thresholds(in);
        if (app.got_subcommand(scan_cmd)) return cmd_scan(in);
        if (app.got_subcommand(selftest_cmd)) return cmd_selftest(in);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const Undefined& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
