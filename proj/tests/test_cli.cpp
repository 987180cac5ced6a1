#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "eeb/cli/app.hpp"

using namespace eeb::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "eebound");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> cells(const std::string& line, char sep = ',') {
    std::vector<std::string> v;
    std::istringstream in(line);
    for (std::string c; std::getline(in, c, sep);) v.push_back(c);
    return v;
}

const std::vector<std::string> kParams{"--E", "100", "--r", "0.1", "--sigma", "0.3"};

std::vector<std::string> with_params(std::vector<std::string> a) {
    a.insert(a.end(), kParams.begin(), kParams.end());
    return a;
}

}  // namespace

TEST(Cli, MethodNames) {
    for (auto m : {Method::KK, Method::EKK, Method::SSC_A, Method::CHEN_CHADAM, Method::ZHU, Method::SSCH, Method::PSOR})
        EXPECT_EQ(parse_method(method_name(m)), m);
    EXPECT_THROW(parse_method("bogus"), UsageError);
}

TEST(Cli, FormatNumber) {
    EXPECT_EQ(format_number(99.1428, 6), "99.1428");
    EXPECT_EQ(format_number(std::nullopt, 6), "n/a");
    EXPECT_EQ(format_number(std::nan(""), 6), "n/a");
    EXPECT_EQ(format_number(0.0001, 6), "0.0001");
}

TEST(Cli, BoundaryEkkSingleTau) {
    const auto r = run_cli(with_params({"boundary", "--method", "ekk", "--tau", "1e-4"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], "tau,rho");
    const auto c = cells(l[1]);
    EXPECT_EQ(c[0], "0.0001");
    EXPECT_NEAR(std::stod(c[1]), 99.14, 0.01);
}

TEST(Cli, BoundaryZhu) {
    const auto r = run_cli(with_params({"boundary", "--method", "zhu", "--tau", "1"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto c = cells(lines(r.out)[1]);
    EXPECT_EQ(c[0], "1");
    EXPECT_NEAR(std::stod(c[1]), 75.458, 1e-3);
}

TEST(Cli, BoundaryDomainError) {
    const auto r = run_cli(with_params({"boundary", "--method", "kk", "--tau", "10"}));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("log argument"), std::string::npos);
}

TEST(Cli, BoundaryNaturalGridUsesNa) {
    const auto r = run_cli(with_params({"boundary", "--method", "kk", "--T", "1", "--m", "10"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 12u);
    EXPECT_EQ(cells(l[1])[1], "100");
    EXPECT_EQ(cells(l.back())[1], "n/a");
}

TEST(Cli, BoundarySschSmoke) {
    const auto r = run_cli(with_params({"boundary", "--method", "ssch", "--T", "0.1", "--m", "20", "--subintervals", "200"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 22u);
    EXPECT_NEAR(std::stod(cells(l.back())[1]), 86.76, 0.2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli(with_params({"boundary", "--method", "bogus", "--tau", "1"})).code, 64);
    EXPECT_EQ(run_cli({"boundary", "--tau", "1"}).code, 64);
    EXPECT_EQ(run_cli({}).code, 64);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 64);
    EXPECT_EQ(run_cli(with_params({"compare", "--method", "ekk", "--tau", "1e-4"})).code, 64);
    EXPECT_EQ(run_cli(with_params({"compare", "--method", "ekk,zhu", "--tau", "1e-4"})).code, 64);
    EXPECT_EQ(run_cli(with_params({"boundary", "--method", "psor"})).code, 64);
    EXPECT_EQ(run_cli(with_params({"boundary", "--method", "ekk", "--tau", "1e-4", "--omega", "2.5"})).code, 64);
}

TEST(Cli, CompareClosedForms) {
    const auto r = run_cli(with_params({"compare", "--method", "ekk,ssc-a,zhu", "--benchmark", "ssc-a", "--tau",
                                        "1e-4,0.04,0.5"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 4u);
    EXPECT_EQ(l[0], "tau,ekk,ssc-a,zhu,relerr_ekk,relerr_ssc-a,relerr_zhu");
    const auto row = cells(l[1]);
    EXPECT_NEAR(std::stod(row[1]), 99.14, 0.01);
    EXPECT_NEAR(std::stod(row[2]), 99.15, 0.01);
    EXPECT_NEAR(std::stod(row[3]), 98.72, 0.01);
    EXPECT_EQ(row[5], "0");
    // ekk and ssc-a are undefined at 0.5
    const auto last = cells(l[3]);
    EXPECT_EQ(last[1], "n/a");
    EXPECT_EQ(last[2], "n/a");
    EXPECT_EQ(last[4], "n/a");
    EXPECT_EQ(last[6], "n/a");
}

TEST(Cli, CompareAgainstItself) {
    const auto r = run_cli(with_params({"compare", "--method", "zhu,zhu", "--benchmark", "zhu", "--T", "1",
                                        "--points", "5"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 6u);
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto c = cells(l[i]);
        EXPECT_EQ(c[3], "0");
        EXPECT_EQ(c[4], "0");
    }
}

TEST(Cli, TsvAndPrecision) {
    const auto r = run_cli(with_params({"boundary", "--method", "ekk", "--tau", "1e-4", "--format", "tsv",
                                        "--precision", "10"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    EXPECT_EQ(l[0], "tau\trho");
    EXPECT_EQ(cells(l[1], '\t')[1].size(), 11u);
}

TEST(Cli, Gamma0) {
    const auto a = run_cli({"gamma0"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_NEAR(std::stod(a.out), 0.0167821, 1e-5);
    EXPECT_EQ(a.out, run_cli({"gamma0"}).out);
}

TEST(Cli, MispricingIdenticalMethods) {
    const auto r = run_cli(with_params({"mispricing", "--method", "zhu", "--benchmark", "zhu", "--points", "4"}));
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 5u);
    EXPECT_EQ(l[0], "tau,eps,err");
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto c = cells(l[i]);
        EXPECT_EQ(c[1], "0");
        EXPECT_EQ(c[2], "0");
    }
}

TEST(Cli, MispricingAgainstSsch) {
    const auto r = run_cli({"mispricing", "--E", "1", "--r", "0.1", "--sigma", "0.3", "--benchmark", "ssch",
                            "--method", "zhu", "--points", "6", "--subintervals", "200", "--m", "40"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 7u);
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto c = cells(l[i]);
        EXPECT_GT(std::stod(c[1]), 0.0);
        EXPECT_GT(std::stod(c[2]), 0.0);
    }
}

TEST(Cli, DeterministicOutput) {
    const std::vector<std::string> args =
        with_params({"compare", "--method", "ssch,zhu,ekk", "--benchmark", "ssch", "--T", "0.2", "--m", "20",
                     "--subintervals", "100", "--points", "8"});
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, OutFile) {
    const std::string path = ::testing::TempDir() + "eeb_out.csv";
    const auto r = run_cli(with_params({"boundary", "--method", "ekk", "--tau", "1e-4", "--out", path}));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::FILE* f = std::fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    char buf[64] = {};
    EXPECT_NE(std::fgets(buf, sizeof buf, f), nullptr);
    std::fclose(f);
    EXPECT_EQ(std::string(buf), "tau,rho\n");
}

TEST(CliBinary, ExitCodes) {
    auto status = [](const std::string& args) {
        const std::string cmd = std::string(EEBOUND_PATH) + " " + args + " >/dev/null 2>&1";
        const int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("boundary --method ekk --tau 1e-4"), 0);
    EXPECT_EQ(status("boundary --method kk --tau 10"), 2);
    EXPECT_EQ(status("boundary --method nope --tau 1"), 64);
    EXPECT_EQ(status("--help"), 0);
}
