#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prt/model_json.hpp"

using namespace prt;

namespace {

const char* kExample = "(x*y - z + 2)*2^x*3^y + (x - y + 2*z + 2)*5^x*7^y + (x*y - z + 3)*11^x*13^y = 0";

}  // namespace

TEST(Classify, Linear) {
    auto cs = classify_text("x + y - z = 0");
    ASSERT_TRUE(std::holds_alternative<LinearSystem>(cs.form));
    const auto& ls = std::get<LinearSystem>(cs.form);
    EXPECT_EQ(ls.A.rows(), 1U);
    EXPECT_EQ(ls.vars.size(), 3U);

    auto two = std::get<LinearSystem>(classify_text("2*x - y = 3").form);
    EXPECT_EQ(two.A(0, 0), 2);
    EXPECT_EQ(two.A(0, 1), -1);
    EXPECT_EQ(two.b[0], 3);

    auto eq = std::get<LinearSystem>(classify_text("x = y").form);
    EXPECT_EQ(eq.A(0, 0), 1);
    EXPECT_EQ(eq.A(0, 1), -1);
    EXPECT_EQ(eq.b[0], 0);
    EXPECT_EQ(classify_text("x = y").class_name(), std::string("LinearSystem"));
}

TEST(Classify, Polynomial) {
    auto cs = classify_text("x^2 - y = 2");
    ASSERT_TRUE(std::holds_alternative<TwoVarPolySystem>(cs.form));
    EXPECT_EQ(std::get<TwoVarPolySystem>(cs.form).polys[0].to_string(), "x^2 - y - 2");

    auto sys = classify_text("x^2 - y - 2 = 0 ; x - y = 0");
    ASSERT_TRUE(std::holds_alternative<TwoVarPolySystem>(sys.form));
    EXPECT_EQ(std::get<TwoVarPolySystem>(sys.form).polys.size(), 2U);

    EXPECT_TRUE(std::holds_alternative<GeneralPolySystem>(classify_text("x*y = z^2").form));
}

TEST(Classify, ThreeCharacterEquation) {
    auto cs = classify_text(kExample);
    ASSERT_TRUE(std::holds_alternative<PolyExpEquation>(cs.form));
    const auto& pe = std::get<PolyExpEquation>(cs.form);
    EXPECT_EQ(pe.m(), 3U);
    EXPECT_EQ(pe.n(), 2U);
    EXPECT_EQ(pe.characters(), (std::vector<std::vector<BigInt>>{{2, 3}, {5, 7}, {11, 13}}));
    EXPECT_EQ(pe.terms[0].poly.to_string(), "x*y - z + 2");
    EXPECT_EQ(pe.terms[1].poly.to_string(), "x - y + 2*z + 2");
    EXPECT_EQ(pe.terms[2].poly.to_string(), "x*y - z + 3");
    EXPECT_EQ(pe.parameter, std::optional<std::string>("z"));
}

TEST(Classify, ExponentialRules) {
    // same exponent variable, different bases multiply
    auto pe = std::get<PolyExpEquation>(classify_text("2^x*3^x = 1").form);
    EXPECT_EQ(pe.characters(), (std::vector<std::vector<BigInt>>{{1}, {6}}));
    EXPECT_THROW(classify_text("2^x = 1; x = 2"), Error);
}

TEST(Classify, StableUnderRenaming) {
    oracle::Rng rng(41);
    const std::vector<std::string> names = {"a", "b", "c", "u", "v", "q"};
    const std::vector<std::string> inputs = {"x + y - z = 0", "2*x - y = 7", "x^2 - y = 2", kExample,
                                             "x*y = z^2; x - z = 1"};
    for (const auto& in : inputs) {
        auto base = classify_text(in);
        for (int it = 0; it < 5; ++it) {
            auto perm = names;
            std::shuffle(perm.begin(), perm.end(), std::mt19937_64(static_cast<std::uint64_t>(rng.uniform(0, 1 << 30))));
            std::string renamed = in;
            // rename x, y, z through placeholders
            const std::vector<std::pair<std::string, std::string>> steps = {
                {"x", "#0"}, {"y", "#1"}, {"z", "#2"}, {"#0", perm[0]}, {"#1", perm[1]}, {"#2", perm[2]}};
            for (const auto& [from, to] : steps)
                for (std::size_t pos = 0; (pos = renamed.find(from, pos)) != std::string::npos; pos += to.size())
                    renamed.replace(pos, from.size(), to);
            auto cs = classify_text(renamed);
            EXPECT_EQ(cs.class_name(), base.class_name()) << renamed;
            ASSERT_EQ(cs.vars().size(), base.vars().size());
            // rename back and compare the normal form text
            auto back = to_json(cs);
            auto ref = to_json(base);
            EXPECT_EQ(back["class"], ref["class"]);
            EXPECT_EQ(back.contains("A"), ref.contains("A"));
            if (ref.contains("A")) {
                EXPECT_EQ(back["A"], ref["A"]);
            }
            if (ref.contains("terms")) {
                for (std::size_t i = 0; i < ref["terms"].size(); ++i) {
                    EXPECT_EQ(back["terms"][i]["character"], ref["terms"][i]["character"]);
                }
            }
        }
    }
}

TEST(ModelJson, RoundTrip) {
    for (const char* in : {kExample, "x + y - z = 0", "x^2 - y - 2 = 0 ; x - y = 0", "x*y = z^2", "2*x - y = 3/2"}) {
        auto cs = classify_text(in);
        auto back = from_json_text(to_json_text(cs));
        EXPECT_TRUE(same_ast(cs.ast, back.ast)) << in;
        EXPECT_EQ(back.class_name(), cs.class_name());
        EXPECT_EQ(to_json(back), to_json(cs));
    }
}

TEST(ModelJson, MatrixForm) {
    auto cs = from_json_text(R"({"A":[[1,1,-1]],"b":[0]})");
    ASSERT_TRUE(std::holds_alternative<LinearSystem>(cs.form));
    const auto& ls = std::get<LinearSystem>(cs.form);
    EXPECT_EQ(ls.A.cols(), 3U);
    EXPECT_EQ(ls.A(0, 2), -1);
    EXPECT_EQ(ls.b[0], 0);

    auto strs = from_json_text(R"({"A":[["1/2","3"]],"b":["5"],"vars":["p","q"]})");
    EXPECT_EQ(std::get<LinearSystem>(strs.form).A(0, 0), BigRat(1, 2));
    EXPECT_EQ(strs.vars(), (std::vector<std::string>{"p", "q"}));
}

TEST(ModelJson, SchemaErrors) {
    auto expect_schema = [](const char* text) {
        try {
            from_json_text(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Schema) << text << ": " << e.what();
        }
    };
    expect_schema(R"({"equatons":["x = y"]})");
    expect_schema(R"({"A":[[1,1]],"b":[0],"extra":1})");
    expect_schema(R"({"equations":"x = y"})");
    expect_schema(R"({"equations":["x = y"],"class":"PolyExpEquation"})");
    expect_schema(R"({"A":[[1,1],[1]],"b":[0,0]})");
    expect_schema(R"({"A":[[true]],"b":[0]})");
    expect_schema("[1,2]");
    expect_schema("{not json");
}
