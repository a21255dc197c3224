#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prt/cli.hpp"

using namespace prt;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
    json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p;
}

}  // namespace

TEST(Cli, DecideCases) {
    struct Case {
        std::vector<std::string> args;
        std::string status;
        int code;
    };
    const std::vector<Case> cases = {
        {{"decide", "--expr", "2*x - y = 7"}, "PR_CONSTANT", 0},
        {{"decide", "--expr", "x + y = z"}, "PR", 0},
        {{"decide", "--expr", "x + y = 3*z + 1"}, "NOT_PR", 0},
        {{"decide", "--expr", "x + y = -4", "--domain", "Z"}, "PR_CONSTANT", 0},
        {{"decide", "--expr", "x + y = -4"}, "NOT_PR", 0},
        {{"decide", "--expr", "x^2 - y - 2 = 0"}, "PR_CONSTANT", 0},
        {{"decide", "--expr", "x^2 + y^2 = 1"}, "NOT_PR", 0},
        {{"decide", "--expr", "(x - 2)*2^x = 0"}, "PR_CONSTANT", 0},
        {{"decide", "--expr", "x*2^x + y*2^y + 3 = 0"}, "UNKNOWN", 2},
    };
    for (const auto& c : cases) {
        auto args = c.args;
        args.push_back("--json");
        auto r = run(args);
        EXPECT_EQ(r.code, c.code) << args[2] << "\n" << r.err;
        ASSERT_NO_THROW(r.j()) << r.out;
        EXPECT_EQ(r.j().at("status"), c.status) << args[2];
        EXPECT_EQ(r.j().at("command"), "decide");
        EXPECT_TRUE(r.j().at("timing").at("elapsed_us").is_number_integer());
    }
}

TEST(Cli, DecideDetails) {
    auto r = run({"decide", "--expr", "2*x - y = 7", "--json"});
    EXPECT_EQ(r.j().at("witnesses"), json::array({"7"}));
    EXPECT_EQ(r.j().at("details").at("infinitely_pr"), false);

    auto s = run({"decide", "--expr", "x + y = z", "--json"});
    EXPECT_EQ(s.j().at("certificates").at("columns_partition").at("blocks"), json::parse("[[1,3],[2]]"));

    auto text = run({"decide", "--expr", "x - y = 0"});
    EXPECT_EQ(text.code, 0);
    EXPECT_NE(text.out.find("PR_CONSTANT"), std::string::npos);
}

TEST(Cli, OtherCommands) {
    auto s = run({"search", "--expr", "x + y = z", "--range", "4", "--json"});
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(s.j().at("outcome"), "AVOIDING");
    EXPECT_EQ(s.j().at("certificates").at("coloring").at("classes"), "1,4 | 2,3");

    auto f = run({"search", "--expr", "x + y = z", "--range", "5", "--json"});
    EXPECT_EQ(f.code, 0);
    EXPECT_EQ(f.j().at("outcome"), "FORCED");

    auto canon = run({"search", "--expr", "x + y = z", "--range", "4", "--canonical", "parity", "--json"});
    EXPECT_EQ(canon.code, 0);
    EXPECT_NE(canon.out.find("2"), std::string::npos);

    auto e = run({"enumerate", "--expr", "x + y = z", "--range", "3", "--json"});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(e.j().at("outcome"), "ENUMERATED");

    auto c = run({"certify", "--expr", "4^s + 2 = 0", "--json"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.j().at("outcome"), "CERTIFIED");

    auto u = run({"rank", "--generators", "-1,2", "--count", "1,1", "--box", "6", "--json"});
    EXPECT_EQ(u.code, 0);
    EXPECT_EQ(u.j().at("details").at("unit_equation").at("count"), 3);

    auto su = run({"rank", "--generators", "2,3", "--sunit", "1,1,-2", "--json"});
    EXPECT_EQ(su.j().at("status"), "PR_CONSTANT");
    auto sn = run({"rank", "--generators", "2,3", "--sunit", "1,1,-3", "--json"});
    EXPECT_EQ(sn.j().at("status"), "NOT_PR");

    auto b = run({"bound", "--rank", "1", "--json"});
    EXPECT_EQ(b.code, 0);
    EXPECT_EQ(b.j().at("details").at("sunit_solution_bound"), "4294967296");
}

TEST(Cli, ReportRoundTrip) {
    for (std::vector<std::string> args : {std::vector<std::string>{"decide", "--expr", "x + y = z", "--json"},
                                          {"search", "--expr", "x + 2*y = z", "--range", "9", "--json"},
                                          {"rank", "--generators", "-1,2", "--count", "1,1", "--box", "3", "--json"}}) {
        auto r = run(args);
        auto rep = report_from_json(r.j());
        EXPECT_EQ(to_json(rep), r.j());
        EXPECT_EQ(report_from_json(to_json(rep)), rep);
    }
    EXPECT_THROW(report_from_json(json::parse(R"({"command":"decide","status":"MAYBE"})")), Error);
    EXPECT_THROW(report_from_json(json::parse(R"({"command":"decide","bogus":1})")), Error);
}

TEST(Cli, Errors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"decide"}).code, 1);
    EXPECT_EQ(run({"decide", "--expr", "2x = y"}).code, 1);
    EXPECT_EQ(run({"decide", "--expr", "x = y", "--domain", "Q"}).code, 1);
    EXPECT_EQ(run({"search", "--expr", "x + y = z"}).code, 1);
    EXPECT_EQ(run({"search", "--expr", "x + y = z", "--range", "4", "--min-injectivity", "9"}).code, 1);
    EXPECT_EQ(run({"rank"}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 1);

    auto j = run({"decide", "--expr", "x + = 1", "--json"});
    EXPECT_EQ(j.code, 1);
    EXPECT_EQ(j.j().at("error").at("kind"), "parse");
    EXPECT_FALSE(j.err.empty());

    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BudgetFromEnvironment) {
    ::setenv("PRTOOLKIT_BUDGET", "1", 1);
    auto r = run({"search", "--expr", "x + y = z", "--range", "12", "--colors", "3", "--json"});
    ::unsetenv("PRTOOLKIT_BUDGET");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.j().at("outcome"), "UNKNOWN");
    auto ok = run({"search", "--expr", "x + y = z", "--range", "12", "--colors", "3", "--json"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.j().at("outcome"), "AVOIDING");
}

TEST(Cli, FileInput) {
    auto text = temp_file("prt_cli_text.txt", "x + y = z\n");
    auto r = run({"decide", "--file", text.string(), "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.j().at("status"), "PR");

    auto sys = classify_text("2*x - y = 5");
    auto doc = temp_file("prt_cli_doc.json", to_json(sys).dump());
    auto d = run({"decide", "--file", doc.string(), "--json"});
    EXPECT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.j().at("witnesses"), json::array({"5"}));

    EXPECT_EQ(run({"decide", "--file", "/nonexistent/prt", "--json"}).code, 1);
    EXPECT_EQ(run({"decide", "--file", text.string(), "--expr", "x = y"}).code, 1);
    auto bad = temp_file("prt_cli_bad.json", R"({"class":"Nope"})");
    EXPECT_EQ(run({"decide", "--file", bad.string()}).code, 1);
}

#ifdef PRTOOLKIT_BIN
TEST(Cli, BinaryExitCodes) {
    std::string bin = PRTOOLKIT_BIN;
    EXPECT_EQ(std::system((bin + " decide --expr 'x + y = z' >/dev/null").c_str()), 0);
    int unk = std::system((bin + " decide --expr 'x*2^x + y*2^y + 3 = 0' >/dev/null").c_str());
    EXPECT_EQ(WEXITSTATUS(unk), 2);
    int bad = std::system((bin + " decide --expr '2x' >/dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(bad), 1);
}
#endif
