#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hlp/cli.hpp"
#include "hlp/error.hpp"
#include "hlp/io.hpp"
#include "hlp/onef2.hpp"
#include "hlp/parallel.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hankel-lp");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = hlp::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("hankel_lp_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("cli: bessel-zeros") {
    auto r = run({"bessel-zeros", "--mu", "0.5", "--count", "5"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"m", "j_mu_m", "bracket_lo", "bracket_hi"});
    for (int m = 1; m <= 5; ++m) {
        CHECK(std::stod(rows[m][1]) == doctest::Approx(m * 3.14159265358979323846).epsilon(1e-15));
        CHECK(std::stod(rows[m][2]) < std::stod(rows[m][1]));
        CHECK(std::stod(rows[m][1]) < std::stod(rows[m][3]));
    }
    auto z = run({"bessel-zeros", "--mu", "0", "--count", "3"});
    auto zr = csv_rows(z.out);
    for (int m = 1; m <= 3; ++m) CHECK(std::fabs(std::stod(zr[m][1]) - oracle::bessel_zero(0.0, m)) <= 1e-9);
    auto bad = run({"bessel-zeros", "--mu", "-1.5"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("cli: lp-classify") {
    auto r = run({"lp-classify", "--a", "3.5", "--b", "4", "--c", "7"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["lp"] == "LP");
    auto mem = j["memberships"].get<std::vector<std::string>>();
    CHECK(std::find(mem.begin(), mem.end(), "S_a") != mem.end());
    auto pos = run({"lp-classify", "0.5,2,2"});
    CHECK(nlohmann::json::parse(pos.out)["lp"] == "NotLP");
    auto t = run({"lp-classify", "1.5,0.3333333333333333,0.6666666666666666", "--transfer"});
    REQUIRE(t.code == 0);
    CHECK(t.out.find("Type3") != std::string::npos);
    CHECK(run({"lp-classify", "1,-2,3"}).code == 2);
}

TEST_CASE("cli: rayleigh and zeros") {
    auto r = run({"rayleigh", "--onef2", "1,2,1.5", "--k", "0"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["newton"][0].get<double>() - 1.0 / 12.0) <= 1e-6);
    CHECK(j["direct_available"] == false);
    // Localization of the double-zero case is refused as a numerical failure.
    auto z = run({"zeros", "--onef2", "1,2,1.5", "--count", "10"});
    CHECK(z.code == 1);
    CHECK(z.err.find("mixed") != std::string::npos);
    auto ok = run({"zeros", "--nu", "0", "--lambda", "1", "--count", "4"});
    REQUIRE(ok.code == 0);
    auto rows = csv_rows(ok.out);
    CHECK(rows[0] == std::vector<std::string>{"m", "lo", "hi", "zeta"});
    CHECK(std::stod(rows[1][3]) == doctest::Approx(oracle::bessel_zero(1.0, 1)).epsilon(1e-13));
}

TEST_CASE("cli: ht, pfe-verify, sample-reconstruct") {
    auto h = run({"ht", "--nu", "1", "--lambda", "2", "--z", "0,2.5,1+2i"});
    REQUIRE(h.code == 0);
    auto rows = csv_rows(h.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == "z_re");
    CHECK(std::stod(rows[1][2]) == 1.0);
    CHECK(std::stod(rows[2][2]) == doctest::Approx(oracle::jbar(2.0, 2.5)).epsilon(1e-13));
    CHECK(rows[3][5] == "true");
    auto hj = run({"ht", "--nu", "1", "--lambda", "2", "--z", "2.5", "--format", "json"});
    CHECK_NOTHROW(nlohmann::json::parse(hj.out));
    auto p = run({"pfe-verify", "--nu", "1", "--lambda", "2", "--mu", "1", "--N", "500"});
    REQUIRE(p.code == 0);
    auto pj = nlohmann::json::parse(p.out);
    CHECK(pj["pass"] == true);
    CHECK(pj["residual"].get<double>() <= 1e-6);
    auto s = run({"sample-reconstruct", "--nu", "0", "--lambda", "2", "--mu", "1", "--z", "5", "--N", "400"});
    REQUIRE(s.code == 0);
    auto sr = csv_rows(s.out);
    CHECK(std::stod(sr[1][3]) <= 1e-4);
    CHECK(run({"pfe-verify", "--nu", "1", "--lambda", "2", "--mu", "3"}).code == 2);
    CHECK(run({"ht", "--nu", "1", "--weight", "beta:1,-2,0", "--z", "1"}).code == 2);
}

TEST_CASE("cli: complex-count") {
    auto r = run({"complex-count", "0.5,2,2", "--rect", "0.1,40,0.1,20", "--quadrants"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("24") != std::string::npos);
    auto h = run({"complex-count", "1,1.5,2", "--rect", "0.5,20,0.5,10"});
    CHECK(h.code == 0);
    CHECK(h.out.find('0') != std::string::npos);
}

TEST_CASE("cli: region-plot writes SVG and CSV") {
    auto d = scratch_dir("region");
    std::string prefix = (d / "fig1").string();
    auto r = run({"region-plot", "--a", "0.5", "--resolution", "50", "--out", prefix});
    REQUIRE(r.code == 0);
    std::string svg = slurp(prefix + ".svg"), csv = slurp(prefix + ".csv");
    CHECK(svg.find("type3-segment") != std::string::npos);
    CHECK(svg.find("type1-ray") != std::string::npos);
    CHECK(csv.rfind("b,c,verdict,memberships", 0) == 0);
    CHECK(run({"region-plot", "--a", "0.5", "--resolution", "5000"}).code == 2);
    fs::remove_all(d);
}

TEST_CASE("cli: exit codes, help and version") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    auto v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("1.0.0") != std::string::npos);
    CHECK(run({"bessel-zeros"}).code == 2);  // --mu is required
    CHECK(run({"ht", "--nu", "1", "--lambda", "2", "--z", "abc"}).code == 2);
}

TEST_CASE("cli: determinism") {
    std::vector<std::string> args = {"zeros", "--nu", "0.25", "--weight", "step:0,1;0.3,2;0.7,5", "--count", "40"};
    auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    setenv("HANKEL_LP_THREADS", "1", 1);
    auto c = run(args);
    unsetenv("HANKEL_LP_THREADS");
    CHECK(a.out == c.out);
    auto t = run({"--threads", "1", "zeros", "--nu", "0.25", "--weight", "step:0,1;0.3,2;0.7,5", "--count", "40"});
    CHECK(a.out == t.out);
    auto d = scratch_dir("det");
    std::string p1 = (d / "a").string(), p2 = (d / "b").string();
    run({"region-plot", "--a", "3.5", "--resolution", "80", "--out", p1});
    run({"region-plot", "--a", "3.5", "--resolution", "80", "--out", p2});
    CHECK(slurp(p1 + ".svg") == slurp(p2 + ".svg"));
    CHECK(slurp(p1 + ".csv") == slurp(p2 + ".csv"));
    fs::remove_all(d);
}

TEST_CASE("config files") {
    std::istringstream in("# comment\n\nroot_tol = 1e-12\nzero_count=7\nformat = json  # trailing\nthreads = 1\n");
    auto c = hlp::parse_config(in, "t.cfg");
    CHECK(c.root_tol == 1e-12);
    CHECK(c.zero_count == 7);
    CHECK(c.format == "json");
    CHECK(c.threads == 1);
    CHECK(c.pfe_terms == 1000);
    std::istringstream unk("zero_count = 7\nbogus = 1\n");
    try {
        hlp::parse_config(unk, "t.cfg");
        FAIL("unknown key accepted");
    } catch (const hlp::DomainError& e) {
        CHECK(std::string(e.what()).find("t.cfg:2") != std::string::npos);
    }
    std::istringstream neg("eval_tol = -1\n");
    CHECK_THROWS_AS(hlp::parse_config(neg), hlp::DomainError);
    std::istringstream junk("zero_count = many\n");
    CHECK_THROWS_AS(hlp::parse_config(junk), hlp::DomainError);
    std::istringstream nokv("zero_count 7\n");
    CHECK_THROWS_AS(hlp::parse_config(nokv), hlp::DomainError);

    auto d = scratch_dir("cfg");
    std::ofstream(d / "run.cfg") << "zero_count = 6\n";
    auto r = run({"--config", (d / "run.cfg").string(), "bessel-zeros", "--mu", "1"});
    REQUIRE(r.code == 0);
    CHECK(csv_rows(r.out).size() == 7);
    CHECK(run({"--config", (d / "missing.cfg").string(), "bessel-zeros", "--mu", "1"}).code == 2);
    fs::remove_all(d);
}

TEST_CASE("complex number and list parsing") {
    CHECK(hlp::parse_complex("2.5") == hlp::cplx(2.5, 0.0));
    CHECK(hlp::parse_complex("1+2i") == hlp::cplx(1.0, 2.0));
    CHECK(hlp::parse_complex("1-2i") == hlp::cplx(1.0, -2.0));
    CHECK(hlp::parse_complex("-3i") == hlp::cplx(0.0, -3.0));
    CHECK(hlp::parse_complex("+2") == hlp::cplx(2.0, 0.0));
    CHECK(hlp::parse_complex("1e-3+1e2i") == hlp::cplx(1e-3, 1e2));
    CHECK(hlp::parse_complex("2j") == hlp::cplx(0.0, 2.0));
    CHECK_THROWS_AS(hlp::parse_complex("2x"), hlp::DomainError);
    CHECK_THROWS_AS(hlp::parse_complex("1+i+"), hlp::DomainError);
    CHECK(hlp::parse_real_list("1,2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
}

TEST_CASE("zero lists round-trip into the zeta-sum check") {
    hlp::OneF2Params p{1.0, 1.75, 1.5};
    auto r = run({"zeros", "--onef2", "1,1.75,1.5", "--count", "200"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    auto back = hlp::read_zero_list(in);
    auto direct = hlp::zeta_sum_check(p, 200);
    REQUIRE(back.zeta.size() == direct.zeros.zeta.size());
    for (std::size_t i = 0; i < back.zeta.size(); ++i) CHECK(back.zeta[i] == direct.zeros.zeta[i]);
    auto again = hlp::zeta_sum_check(p, back);
    CHECK(std::fabs(again.lhs - direct.lhs) <= 1e-15);
}
