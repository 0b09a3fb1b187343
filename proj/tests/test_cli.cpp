#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HURWITZ_LAB_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("hurwitz_lab_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, WeierstrassJson) {
    const auto r = run("weierstrass --n 4 --p 5 --json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"spec", "eps", "case", "degR", "omega", "w", "soundness", "completeness"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["eps"], 2);
    EXPECT_EQ(j["degR"], 45);
    EXPECT_EQ(j["w"].size(), 39u);
    EXPECT_EQ(j["omega"].size(), 3u);
    EXPECT_EQ(j["spec"]["n"], 4);
    EXPECT_TRUE(j["soundness"].get<bool>());
    EXPECT_TRUE(j["completeness"].get<bool>());
    const auto& rec = j["w"][0];
    EXPECT_TRUE(rec.contains("point") && rec.contains("j") && rec.contains("field"));
}

TEST(Cli, OutputIsDeterministic) {
    const auto a = run("weierstrass --n 6 --p 19 --scan-k 3 --json");
    const auto b = run("weierstrass --n 6 --p 19 --scan-k 3 --json");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, RefusesSingularCurve) {
    const auto r = run("weierstrass --n 4 --p 13");
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(run("autgroup --n 5 --p 3").status, 2);
    EXPECT_EQ(run("autgroup --n 4 --p 2").status, 2);  // n a power of p
}

TEST(Cli, ParseErrors) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("weierstrass --p 5").status, 2);
    EXPECT_EQ(run("autgroup --n 4 --p 5 --table nope").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
}

TEST(Cli, AutgroupGenusTable) {
    const auto r = run("autgroup --n 5 --p 2 --table genus --json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["order"], 63);
    ASSERT_TRUE(j.contains("genus"));
    for (const auto& row : j["genus"]["rows"]) {
        for (const char* key : {"kind", "params", "order", "class_size", "genus_closed", "genus_rh"})
            EXPECT_TRUE(row.contains(key)) << key;
        EXPECT_EQ(row["genus_closed"], row["genus_rh"]) << row["label"];
    }
}

TEST(Cli, LucasDefaultsToEveryDivisor) {
    const auto r = run("lucas --p 7 --r 1 --census --json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["maximality"]["point_count"], 92);
    EXPECT_EQ(j["census"]["total_flex_count"], 12);
    EXPECT_EQ(run("lucas --p 2 --r 1").status, 2);
}

TEST(Cli, VerifyAllDefaultMatrix) {
    const auto r = run("verify-all -q");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("all rows passed"), std::string::npos);
}

TEST(Cli, MatrixFile) {
    const auto path = scratch("matrix.txt");
    {
        std::ofstream f(path);
        f << "# two rows\nweierstrass n=4 p=5 k0=4\n\nlucas p=5 r=1 n=3   # maximal\n";
    }
    const auto r = run("verify-all -q --json --matrix " + path.string());
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_EQ(j["rows"].size(), 2u);

    {
        std::ofstream f(path);
        f << "weierstrass n=4 p=5\nautgroup n=5 p=3\n";
    }
    EXPECT_EQ(run("verify-all -q --matrix " + path.string()).status, 1);
    {
        std::ofstream f(path);
        f << "bogus n=4\n";
    }
    EXPECT_EQ(run("verify-all -q --matrix " + path.string()).status, 2);
    EXPECT_EQ(run("verify-all -q --matrix " + scratch("missing.txt").string()).status, 2);
    std::filesystem::remove(path);
}

TEST(Cli, OutputFile) {
    const auto path = scratch("report.json");
    ASSERT_EQ(run("autgroup --n 4 --p 5 --json -o " + path.string()).status, 0);
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["order"], 39);
    std::filesystem::remove(path);
}
