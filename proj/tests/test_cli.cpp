#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string bin() {
    const char* b = std::getenv("REGEN_BIN");
    REQUIRE_MESSAGE(b != nullptr, "REGEN_BIN must point at the regen executable");
    return b;
}

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_out.tmp";
    const std::string cmd = bin() + " " + args + " > " + out_path + " 2> cli_test_err.tmp";
    const int raw = std::system(cmd.c_str());
    std::ifstream f(out_path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return {WEXITSTATUS(raw), ss.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("point --M 10 --n 10 --k 5 --d 7").code == 0);
    CHECK(run("no-such-command").code == 1);
    CHECK(run("point --M oops").code == 1);
    CHECK(run("point --M 0 --n 10 --k 5 --d 7").code == 1);
    CHECK(run("opt-helpers --M 10 --n 10 --k 5 --gamma-th 0.2 --eps 0.1").code == 2);
    CHECK(run("opt-storage --M 4 --n 4 --k 2 --d 3 --gamma-th 6 --alpha-th 1 --eps 0.1").code == 2);
}

TEST_CASE("point command emits both families with exact columns") {
    const auto r = run("point --M 10 --n 10 --k 5 --d 7");
    CHECK(first_line(r.out) == "family,alpha,alpha_exact,beta,beta_exact,gamma,gamma_exact");
    CHECK(r.out.find("MBR,2.8,14/5,0.4,2/5,2.8,14/5") != std::string::npos);
    CHECK(r.out.find("MSR,2,2") != std::string::npos);
}

TEST_CASE("csv is stable and seed-deterministic") {
    const std::string args =
        "simulate --scheme helpers --family mbr --M 10 --n 10 --k 5 --d 5 --d-prime 6 "
        "--eps 0.1 --trials 3000 --seed 99";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);  // byte-identical
    CHECK(first_line(a.out) ==
          "scheme,eps,eps_exact,trials,successes,p_hat,ci95,p_analytic,abs_err,seed");

    const auto t1 = run("tradeoff --M 1 --n 10 --k 5 --d 9 --eps 0.1 --grid 16");
    const auto t2 = run("tradeoff --M 1 --n 10 --k 5 --d 9 --eps 0.1 --grid 16");
    CHECK(t1.out == t2.out);
    CHECK(t1.out.find("infeasible") != std::string::npos);  // sentinel below MBR bandwidth
    CHECK(t1.out.find("0.2,1/5,ok") != std::string::npos);  // MSR plateau
}

TEST_CASE("json envelope carries inputs, series and meta") {
    const auto r = run("psucc --d 7 --d-prime 9 --beta 2/5 --eps 0.1 --format json");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.contains("inputs"));
    CHECK(j.contains("series"));
    CHECK(j["meta"]["version"] == "1.0.0");
    CHECK(j["series"].size() == 1);
    CHECK(j["series"][0]["p_success"].get<double>() == doctest::Approx(0.947027862).epsilon(1e-9));
    CHECK(j["series"][0]["gamma_prime_exact"] == "18/5");
}

TEST_CASE("repetition and two-layer commands match the module values") {
    const auto rep = run("psucc-rep --counts 2 1 1 --eps 0.1 --format json");
    CHECK(rep.code == 0);
    const auto j = nlohmann::json::parse(rep.out);
    CHECK(j["series"][0]["p_success"].get<double>() == doctest::Approx(0.8019).epsilon(1e-9));

    const auto two = run(
        "psucc-2layer --M 4 --n 4 --k 2 --d 3 --alpha1 2 --alpha2 1 --beta1 1 --beta2 1 "
        "--eps 0.1 --format json");
    const auto j2 = nlohmann::json::parse(two.out);
    CHECK(j2["series"][0]["p_success"].get<double>() == doctest::Approx(0.999945).epsilon(1e-9));
}

TEST_CASE("opt and region commands run end to end") {
    const auto opt = run("opt-helpers --M 10 --n 10 --k 5 --family mbr --gamma-th 5 --eps 0.1");
    CHECK(opt.code == 0);
    CHECK(opt.out.find(",6,9,") != std::string::npos);  // d=6, d'=9

    const auto storage = run(
        "opt-storage --M 4 --n 4 --k 2 --d 3 --gamma-th 6 --alpha-th 3 --eps 0.1 --format json");
    CHECK(storage.code == 0);
    const auto j = nlohmann::json::parse(storage.out);
    CHECK(j["series"][0]["p_star"].get<double>() == doctest::Approx(0.999945).epsilon(1e-9));
    CHECK(j["series"][0]["anchor"] == "MSR");

    const auto region = run(
        "region-map --M 1 --n 10 --k 5 --d 9 --eps 0.1 --gamma-min 0.36 --gamma-max 0.6 "
        "--alpha-min 0.19 --alpha-max 0.4 --cells 3 --grid 16");
    CHECK(region.code == 0);
    CHECK(first_line(region.out) == "gamma_th,gamma_th_exact,alpha_th,alpha_th_exact,winner");
    CHECK(region.out.find("INFEASIBLE") != std::string::npos);
    CHECK(region.out.find("MSR") != std::string::npos);
}

TEST_CASE("file output and validate quick mode") {
    const std::string path = "cli_test_file.csv";
    const auto r = run("point --M 10 --n 10 --k 5 --d 7 --out " + path);
    CHECK(r.code == 0);
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line == "family,alpha,alpha_exact,beta,beta_exact,gamma,gamma_exact");

    // contract: exit 0 when every check passes, 3 when any fails
    const auto v = run("validate --quick");
    CHECK(first_line(v.out) == "criterion,check,expected,observed,tolerance,pass,seconds");
    const bool has_fail = v.out.find("FAIL") != std::string::npos;
    CHECK(v.code == (has_fail ? 3 : 0));
    CHECK(v.out.find("repetition p_s") != std::string::npos);
    CHECK(v.out.find("0.8019") != std::string::npos);
    // fields containing commas are quoted
    CHECK(v.out.find("\"mbr bandwidth d=7,d'=9\"") != std::string::npos);
}

TEST_CASE("opt-helpers defaults to the reference file size") {
    const auto implicit = run("opt-helpers --n 10 --k 5 --family mbr --gamma-th 5 --eps 0.1");
    const auto explicit_m = run("opt-helpers --M 10 --n 10 --k 5 --family mbr --gamma-th 5 --eps 0.1");
    CHECK(implicit.code == 0);
    CHECK(implicit.out == explicit_m.out);
}
