#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace mllrc;
namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    const int status = cli::run(args, out, err, in);
    return {status, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mllrc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    fs::path dir_;
};

TEST_F(Cli, TamoBargPipeline) {
    auto built = run({"construct", "tamo-barg", "--q", "13", "--n", "12", "--k", "6", "--r", "3"});
    ASSERT_EQ(built.status, 0) << built.err;
    EXPECT_TRUE(code_from_string(built.out).same_code(tamo_barg(13, 12, 6, 3)));
    auto base = write("base.code", built.out);

    auto sh = run({"shorten", "--input", base, "--pos", "0", "-o", path("short.code")});
    ASSERT_EQ(sh.status, 0) << sh.err;
    auto cert = run({"certify", "--input", path("short.code"), "--format", "kv", "--expect-optimal", "singleton"});
    EXPECT_EQ(cert.status, 0) << cert.err;
    EXPECT_NE(cert.out.find("profile=(3,2),(8,3)\n"), std::string::npos);

    auto piped = run({"certify", "--input", "-", "--expect-optimal", "singleton"}, built.out);
    EXPECT_EQ(piped.status, 0);
}

TEST_F(Cli, BinaryCodeAlphabetOptimal) {
    auto built = run({"construct", "gcc2", "--r", "3", "--j", "0"});
    ASSERT_EQ(built.status, 0);
    auto code = write("c.code", built.out);
    auto cert = run({"certify", "--input", code, "--oracle", "table", "--format", "kv", "--expect-optimal", "alphabet"});
    EXPECT_EQ(cert.status, 0) << cert.err;
    EXPECT_NE(cert.out.find("alphabet_witness=2\n"), std::string::npos);
    // Singleton-type bound is 11, so this expectation fails
    auto sing = run({"certify", "--input", code, "--expect-optimal", "singleton"});
    EXPECT_EQ(sing.status, 1);
    EXPECT_NE(sing.err.find("verification failed"), std::string::npos);
}

// [12,5,3]_2 whose alphabet bound under the analytic oracle is 6, inexact
const char* const kLooseCode = "q=2 p=2 m=1 n=12 k=5\n"
    "0 0 1 0 0 1 0 1 1 1 0 1\n"
    "1 1 0 0 1 1 1 1 0 0 0 0\n"
    "0 1 1 1 1 1 1 1 0 1 1 1\n"
    "0 0 0 0 1 0 1 1 0 0 1 0\n"
    "0 0 0 1 0 1 0 0 1 0 0 0\n";

TEST_F(Cli, InexactOracleExitsOne) {
    auto code = write("c.code", kLooseCode);
    auto cert = run({"certify", "--input", code, "--oracle", "analytic", "--expect-optimal", "alphabet"});
    EXPECT_EQ(cert.status, 1);
    EXPECT_NE(cert.err.find("inexact oracle"), std::string::npos);
}

TEST_F(Cli, EvenLocalityRejected) {
    auto r = run({"construct", "gcc2", "--r", "2", "--j", "0"});
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("precondition failed"), std::string::npos);
}

TEST_F(Cli, Bounds) {
    auto s = run({"bound", "singleton", "--n", "12", "--k", "6", "--r", "3"});
    EXPECT_EQ(s.status, 0);
    EXPECT_NE(s.out.find("value=6\n"), std::string::npos);
    auto ms = run({"bound", "ml-singleton", "--profile", "(3,2),(8,3)", "--k", "5"});
    EXPECT_NE(ms.out.find("value=6\n"), std::string::npos);
    auto cm = run({"bound", "cm", "--n", "9", "--d", "6", "--r", "2", "--q", "2"});
    EXPECT_NE(cm.out.find("value=3\n"), std::string::npos);
    EXPECT_NE(cm.out.find("witness=1\n"), std::string::npos);
    auto ma = run({"bound", "ml-alphabet", "--profile", "(3,2),(16,3)", "--d", "8", "--q", "2", "--k", "7",
                   "--oracle", "table"});
    EXPECT_EQ(ma.status, 0) << ma.err;
    EXPECT_NE(ma.out.find("value=7\n"), std::string::npos);
    EXPECT_NE(ma.out.find("witness=1,1\n"), std::string::npos);
    EXPECT_EQ(run({"bound", "ml-singleton", "--profile", "(3,2", "--k", "5"}).status, 2);
}

TEST_F(Cli, ExtraKoptTable) {
    auto table = write("t.txt", "2 9 6 2 Griesmer and an explicit [9,2,6]\n");
    auto r = run({"bound", "cm", "--n", "9", "--d", "6", "--r", "2", "--q", "2", "--oracle", "table", "--table", table});
    EXPECT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("exact=true\n"), std::string::npos);
    auto bad = write("bad.txt", "2 9 6 3 impossible\n");
    EXPECT_EQ(run({"bound", "cm", "--n", "9", "--d", "6", "--r", "2", "--q", "2", "--table", bad}).status, 2);
}

TEST_F(Cli, AlgorithmsMatchShortening) {
    auto base = write("b.code", run({"construct", "tamo-barg", "--q", "13", "--n", "12", "--k", "6", "--r", "3"}).out);
    auto a1 = run({"construct", "alg1", "--input", base, "--r1", "2", "--n1", "3"});
    ASSERT_EQ(a1.status, 0) << a1.err;
    EXPECT_TRUE(code_from_string(a1.out).same_code(tamo_barg(13, 12, 6, 3).shorten(0)));
    auto a3 = run({"construct", "alg3", "--input", base, "--r1", "2", "--alpha", "1"});
    ASSERT_EQ(a3.status, 0) << a3.err;
    EXPECT_TRUE(code_from_string(a3.out).same_code(code_from_string(a1.out)));
}

TEST_F(Cli, SpecFiles) {
    auto pyr = write("p.spec", "q=7 k=4 d=3\nclass r=1 info=0,1\nclass r=2 info=2,3\n");
    auto built = run({"construct", "pyramid", "--spec", pyr});
    ASSERT_EQ(built.status, 0) << built.err;
    EXPECT_EQ(code_from_string(built.out).length(), 8u);
    auto cert = run({"certify", "--pyramid", pyr, "--format", "kv", "--expect-optimal", "singleton"});
    EXPECT_EQ(cert.status, 0) << cert.err;
    EXPECT_NE(cert.out.find("accounting=information-symbol\n"), std::string::npos);

    std::ostringstream gs;
    write_gcc_spec(gs, construction2_spec(3, 1));
    auto gcc = run({"construct", "gcc", "--spec", write("g.spec", gs.str())});
    ASSERT_EQ(gcc.status, 0) << gcc.err;
    EXPECT_TRUE(code_from_string(gcc.out).same_code(construction2_binary_lrc(3, 1)));
}

TEST_F(Cli, AnalyzeListsRepairSets) {
    auto base = write("b.code", run({"construct", "tamo-barg", "--q", "7", "--n", "6", "--k", "2", "--r", "2"}).out);
    auto r = run({"analyze", "--input", base, "--format", "kv"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("coord5=r:2;helpers:0,1;"), std::string::npos);
}

TEST_F(Cli, ParallelCertifyKeepsOrder) {
    auto a = write("a.code", run({"construct", "tamo-barg", "--q", "7", "--n", "6", "--k", "2", "--r", "2"}).out);
    auto b = write("b.code", run({"construct", "tamo-barg", "--q", "13", "--n", "12", "--k", "6", "--r", "3"}).out);
    auto serial = run({"certify", "--input", a, b, a, "--format", "kv"});
    auto parallel = run({"certify", "--input", a, b, a, "--format", "kv", "--jobs", "3"});
    EXPECT_EQ(serial.status, 0);
    EXPECT_EQ(serial.out, parallel.out);
    EXPECT_LT(serial.out.find("file=" + a), serial.out.find("file=" + b));
}

TEST_F(Cli, Sweep) {
    auto ok = run({"sweep", "dominance", "--count", "500", "--seed", "3"});
    EXPECT_EQ(ok.status, 0);
    EXPECT_NE(ok.out.find("failures=0\n"), std::string::npos);
    auto any = run({"sweep", "dominance", "--count", "1000", "--seed", "3", "--any"});
    EXPECT_EQ(any.status, 1);
    EXPECT_EQ(any.out, run({"sweep", "dominance", "--count", "1000", "--seed", "3", "--any"}).out);
}

TEST_F(Cli, BudgetAndErrors) {
    auto base = write("b.code", run({"construct", "tamo-barg", "--q", "13", "--n", "12", "--k", "6", "--r", "3"}).out);
    auto r = run({"--budget", "1000", "certify", "--input", base});
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.err.find("budget exceeded"), std::string::npos);
    EXPECT_EQ(run({"certify", "--input", path("missing.code")}).status, 2);
    EXPECT_EQ(run({"frobnicate"}).status, 2);
    EXPECT_EQ(run({"certify"}).status, 2);
    EXPECT_EQ(run({"shorten", "--input", base, "--pos", "12"}).status, 2);
    auto bad = write("bad.code", "q=5 p=5 m=1 n=2 k=1\n1 7\n");
    auto parse = run({"analyze", "--input", bad});
    EXPECT_EQ(parse.status, 2);
    EXPECT_NE(parse.err.find("parse error"), std::string::npos);
    EXPECT_EQ(run({"--help"}).status, 0);
}

}  // namespace
