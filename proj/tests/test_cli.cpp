#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliRun {
    int code = -1;
    std::string out;  // stdout and stderr
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(JLCRIT_CLI) + " " + args + " 2>&1";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool has(const CliRun& r, const std::string& needle) { return r.out.find(needle) != std::string::npos; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch() {
    const auto dir = std::filesystem::temp_directory_path() / "jlcrit-cli-test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Classify, Examples) {
    const CliRun a = run("classify --N 5 --s 0.5 --l 0 --p 3");
    EXPECT_EQ(a.code, 0);
    EXPECT_TRUE(has(a, "label=Subcritical")) << a.out;
    EXPECT_TRUE(has(a, "p_S=")) << a.out;
    EXPECT_TRUE(has(a, "theta0=")) << a.out;
    EXPECT_TRUE(has(a, "A0=")) << a.out;
    EXPECT_TRUE(has(a, "stable=no")) << a.out;

    const CliRun b = run("classify --N 3 --s 0.5 --l 0 --p 1.5");
    EXPECT_EQ(b.code, 0);
    EXPECT_TRUE(has(b, "label=Subcritical")) << b.out;
    EXPECT_TRUE(has(b, "margin=n/a")) << b.out;

    const CliRun c = run("classify --N 11 --s 0.5 --l 0 --p 100");
    EXPECT_EQ(c.code, 0);
    EXPECT_TRUE(has(c, "label=Supercritical")) << c.out;
    EXPECT_TRUE(has(c, "stable=yes")) << c.out;
}

TEST(Classify, EveryDomainClauseExitsTwo) {
    const std::pair<const char*, const char*> cases[] = {
        {"--N 3 --s 0.5 --l -1.2 --p 2", "l > -2s"},
        {"--N 3 --s 1.2 --l 0 --p 2", "0 < s < 1"},
        {"--N 3 --s 0 --l 0 --p 2", "0 < s < 1"},
        {"--N 3 --s 0.5 --l 0 --p 1", "p > 1"},
        {"--N 0 --s 0.5 --l 0 --p 2", "N >= 1"},
        {"--N 1 --s 0.7 --l 0 --p 2", "N > 2s"},
    };
    for (const auto& [args, clause] : cases) {
        const CliRun r = run(std::string("classify ") + args);
        EXPECT_EQ(r.code, 2) << args;
        EXPECT_TRUE(has(r, clause)) << args << ": " << r.out;
    }
}

TEST(Cli, BadInvocationExitsTwo) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("classify --N 3 --s abc --p 2").code, 2);
    EXPECT_EQ(run("classify --N 3 --s 0.5").code, 2);  // missing --p
    EXPECT_EQ(run("classify --N 3 --s 0.5 --p 2 --format xml").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Exponents, Examples) {
    const CliRun none = run("exponents --N 5 --s 0.5 --l 0");
    EXPECT_EQ(none.code, 0);
    EXPECT_TRUE(has(none, "no critical exponent; all p subcritical")) << none.out;

    const CliRun one = run("exponents --N 11 --s 0.999 --l 0");
    EXPECT_EQ(one.code, 0);
    EXPECT_TRUE(has(one, "p1 = 6.9")) << one.out;  // p_c(11) = 6.922...

    const CliRun json = run("exponents --N 10 --s 0.5 --l 0 --format json");
    EXPECT_EQ(json.code, 0);
    EXPECT_TRUE(has(json, "\"crossings\"")) << json.out;
    EXPECT_TRUE(has(json, "\"Supercritical\"")) << json.out;

    EXPECT_EQ(run("exponents --N 3 --s 0.5 --l -2").code, 2);
}

TEST(Exponents, FourExponentWindow) {
    // l in (l1, l2) at N = 8, s = 0.05
    const CliRun r = run("exponents --N 8 --s 0.05 --l 0.00072");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r, "(p_S, p1): Subcritical")) << r.out;
    EXPECT_TRUE(has(r, "(p1, p2): Supercritical")) << r.out;
    EXPECT_TRUE(has(r, "(p2, inf): Subcritical")) << r.out;
    EXPECT_TRUE(has(r, "window p1..p4")) << r.out;
}

TEST(Thresholds, Examples) {
    const CliRun s8 = run("thresholds --N 8");
    EXPECT_EQ(s8.code, 0);
    EXPECT_TRUE(has(s8, "s_N = 0.28206671815")) << s8.out;
    EXPECT_TRUE(has(s8, "t_N = 0.13624394231")) << s8.out;

    const CliRun s7 = run("thresholds --N 7 --want s_N");
    EXPECT_EQ(s7.code, 2);
    EXPECT_TRUE(has(s7, "p_JL is infinite")) << s7.out;

    const CliRun nstar = run("thresholds --s 0.5 --l 0");
    EXPECT_EQ(nstar.code, 0);
    EXPECT_TRUE(has(nstar, "N_star = 9")) << nstar.out;

    const CliRun ells = run("thresholds --N 8 --s 0.05 --want l1 --want l2 --want l3");
    EXPECT_EQ(ells.code, 0);
    EXPECT_TRUE(has(ells, "l1 = 0.00067002174")) << ells.out;

    const CliRun neg = run("thresholds --N 8 --l -0.1 --want s_N_l");
    EXPECT_EQ(neg.code, 0) << neg.out;

    EXPECT_EQ(run("thresholds --N 8 --want bogus").code, 2);
    EXPECT_EQ(run("thresholds --N 8 --s 0.5 --want l1").code, 2);  // s > s_8
}

TEST(Scan, WritesDeterministicFiles) {
    const auto dir = scratch();
    const std::string base = "scan --N 8 --l 0 --grid s=0.05:0.95:40 --grid p=1.5:20:40 ";
    for (const char* fmt : {"csv", "json"}) {
        const auto a = dir / (std::string("a.") + fmt);
        const auto b = dir / (std::string("b.") + fmt);
        ASSERT_EQ(run(base + "--format " + fmt + " --out " + a.string()).code, 0);
        ASSERT_EQ(run(base + "--format " + fmt + " --out " + b.string()).code, 0);
        EXPECT_EQ(slurp(a), slurp(b));
        EXPECT_FALSE(slurp(a).empty());
    }
    EXPECT_EQ(slurp(dir / "a.csv").rfind("s,p,l,label,margin\n", 0), 0u);
    std::filesystem::remove_all(dir);
}

TEST(Scan, SingleCellMatchesClassify) {
    const CliRun cls = run("classify --N 10 --s 0.5 --l 0 --p 7");
    const CliRun cell = run("scan --N 10 --s 0.5 --l 0 --grid p=7:7:1");
    ASSERT_EQ(cell.code, 0);
    const auto label_pos = cls.out.find("label=") + 6;
    const std::string label = cls.out.substr(label_pos, cls.out.find(' ', label_pos) - label_pos);
    const auto margin_pos = cls.out.find("margin=") + 7;
    const std::string margin = cls.out.substr(margin_pos, cls.out.find(' ', margin_pos) - margin_pos);
    EXPECT_TRUE(has(cell, "7,0.5,0," + label + "," + margin)) << cell.out << " vs " << cls.out;
}

TEST(Scan, SpecErrorsExitTwoAndLeaveNoFile) {
    const auto dir = scratch();
    const auto out = dir / "bad.csv";
    EXPECT_EQ(run("scan --N 8 --l 0 --grid s=0.5:0.1:10 --grid p=2:3:10 --out " + out.string()).code, 2);
    EXPECT_EQ(run("scan --N 8 --l 0 --grid s=0.1:0.5:1 --grid p=2:3:10").code, 2);
    EXPECT_EQ(run("scan --N 8 --s 0.3 --grid l=0:1:4").code, 2);  // p missing
    EXPECT_EQ(run("scan --N 8 --s 0.3 --grid p=2:3:4 --format xml").code, 2);
    EXPECT_FALSE(std::filesystem::exists(out));
    EXPECT_FALSE(std::filesystem::exists(dir / "bad.csv.tmp"));
    std::filesystem::remove_all(dir);
}

TEST(Config, FlagsOverrideConfig) {
    const auto dir = scratch();
    const auto cfg = dir / "run.cfg";
    std::ofstream(cfg) << "tol = 0.5\nout_dir = " << dir.string() << "\n";
    // tol 0.5 widens the Critical band enough to swallow this point
    const CliRun wide = run("classify --N 10 --s 0.5 --l 0 --p 7 --config " + cfg.string());
    EXPECT_TRUE(has(wide, "label=Critical")) << wide.out;
    const CliRun narrow = run("classify --N 10 --s 0.5 --l 0 --p 7 --tol 1e-9 --config " + cfg.string());
    EXPECT_FALSE(has(narrow, "label=Critical")) << narrow.out;

    ASSERT_EQ(run("scan --N 8 --s 0.2 --grid p=2:3:3 --config " + cfg.string()).code, 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "phase_diagram.csv"));

    std::ofstream(cfg) << "verbose = 1\n";
    EXPECT_EQ(run("classify --N 10 --s 0.5 --l 0 --p 7 --config " + cfg.string()).code, 2);
    std::filesystem::remove_all(dir);
}

TEST(Selftest, PassesAndDetectsWideBand) {
    const CliRun ok = run("selftest");
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_TRUE(has(ok, "14/14 checks passed")) << ok.out;
    const CliRun wide = run("selftest --tol 1e-1");
    EXPECT_NE(wide.code, 0);
    EXPECT_TRUE(has(wide, "FAIL")) << wide.out;
}
