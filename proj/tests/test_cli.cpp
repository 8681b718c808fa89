#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "zp2/io.hpp"

using zp2::io::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = zp2::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json rows(const Result& r) { return json::parse(r.out).at("rows"); }

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        std::size_t j = line.find("  ", i);
        if (j == std::string::npos) j = line.size();
        out.push_back(line.substr(i, j - i));
        i = line.find_first_not_of(' ', j);
        if (i == std::string::npos) break;
    }
    return out;
}

const std::string kCanonical = R"({"m":3,"n":3,"a_digits":[0,1,1],"j":1})";

}  // namespace

TEST(Cli, PhiAtLambdaOne) {
    auto r = run({"phi", "--p", "3", "--m", "3", "--n", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    json rs = rows(r);
    ASSERT_EQ(rs.size(), 3u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(rs[k]["j"], k);
        EXPECT_EQ(rs[k]["a_digits"], json::array({0, k, k}));
    }
    EXPECT_EQ(run({"phi", "--m", "3", "--n", "3", "--oracle"}).out, r.out);
}

TEST(Cli, EnumerateLowestCell) {
    auto r = run({"enumerate", "--p", "3", "--m-max", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    json rs = rows(r);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0]["m"], 0);
    EXPECT_EQ(rs[0]["n"], 0);
}

TEST(Cli, EnumerateIsSorted) {
    json rs = rows(run({"enumerate"}));
    EXPECT_EQ(rs.size(), 7u);
    for (std::size_t i = 1; i < rs.size(); ++i) {
        auto key = [](const json& x) { return std::make_tuple(x["m"].get<int>(), x["n"].get<int>(), x["a_digits"].get<std::vector<int>>(), x["j"].get<int>()); };
        EXPECT_LT(key(rs[i - 1]), key(rs[i]));
    }
}

TEST(Cli, Isomorphic) {
    auto r = run({"isomorphic", "--left", kCanonical, "--right", R"({"m":3,"n":3,"a_digits":[0,2,2],"j":2})"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(rows(r)[0]["isomorphic"], true);
    r = run({"isomorphic", "--left", kCanonical, "--right", R"({"m":3,"n":2,"a_digits":[0,1],"j":1})"});
    EXPECT_EQ(rows(r)[0]["isomorphic"], false);
}

TEST(Cli, HomClosedAndOracleAgree) {
    std::vector<std::string> base = {"hom", "--left", kCanonical, "--right", R"({"m":3,"n":1,"a_digits":[0],"j":1})"};
    auto a = run(base);
    base.push_back("--oracle");
    auto b = run(base);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TableAndJsonCarryTheSameData) {
    for (const std::string cmd : {"enumerate", "ring-info", "phi"}) {
        std::vector<std::string> args = {cmd};
        if (cmd == "phi") args.insert(args.end(), {"--m", "3", "--n", "2"});
        auto j = run(args);
        args.push_back("--table");
        auto t = run(args);
        ASSERT_EQ(j.code, 0) << j.err;
        json doc = json::parse(j.out);
        std::istringstream is(t.out);
        std::string line;
        std::getline(is, line);
        EXPECT_EQ(split_cells(line), doc["columns"].get<std::vector<std::string>>());
        for (const auto& row : doc["rows"]) {
            ASSERT_TRUE(std::getline(is, line));
            auto cells = split_cells(line);
            ASSERT_EQ(cells.size(), doc["columns"].size());
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const json& v = row[doc["columns"][i].get<std::string>()];
                EXPECT_EQ(cells[i], v.is_string() ? v.get<std::string>() : v.dump());
            }
        }
        EXPECT_FALSE(std::getline(is, line));
    }
}

TEST(Cli, FiberAndVerify) {
    auto f = run({"fiber", "--model", kCanonical});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(rows(f)[0]["class"], "ZpByZp(0, 1)");
    EXPECT_EQ(rows(f)[0]["verified"], true);
    auto v = run({"verify", "--m-max", "1"});
    ASSERT_EQ(v.code, 0) << v.err;
    for (const auto& r : rows(v)) EXPECT_EQ(r["ok"], true);
}

TEST(Cli, DumpSeries) {
    auto r = run({"dump-series", "--p", "3", "--degree", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::string> c;
    for (const auto& x : rows(r)) c.push_back(x["coeff"]);
    EXPECT_EQ(c, (std::vector<std::string>{"1", "1", "1/2", "1/2", "3/8"}));
}

TEST(Cli, ValidationErrorsExitTwo) {
    EXPECT_EQ(run({"ring-info", "--p", "4"}).code, 2);
    EXPECT_EQ(run({"ring-info", "--p", "2"}).code, 2);
    EXPECT_EQ(run({"phi", "--m", "1", "--n", "2"}).code, 2);
    EXPECT_EQ(run({"phi", "--m", "1"}).code, 2);
    EXPECT_EQ(run({"isomorphic", "--left", "{", "--right", kCanonical}).code, 2);
    EXPECT_EQ(run({"isomorphic", "--left", R"({"m":3,"n":3,"a_digits":[0,1,1],"j":5})", "--right", kCanonical}).code, 2);
    EXPECT_EQ(run({"fiber", "--p", "5", "--model", R"({"p":3,"m":3,"n":3,"a_digits":[0,1,1],"j":1})"}).code, 2);
    EXPECT_EQ(run({"phi", "--m", "3", "--n", "3", "--oracle", "--budget", "10"}).code, 2);
    EXPECT_EQ(run({"fiber", "--model", R"({"m":3,"n":3,"a_digits":[0,1,2],"j":1})"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, CorruptedEisensteinFails) {
    auto r = run({"selftest", "--corrupt-eisenstein"});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("EisensteinError"), std::string::npos) << r.err;
}

TEST(Cli, OutFile) {
    const std::string path = testing::TempDir() + "zp2_cli_out.json";
    auto r = run({"enumerate", "--m-max", "0", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    json doc = json::parse(f);
    EXPECT_EQ(doc["rows"].size(), 1u);
    std::remove(path.c_str());
}
