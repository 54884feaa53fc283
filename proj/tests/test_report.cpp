#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <sys/wait.h>

#include "branchform/branchform.hpp"
#include "branchform/report.hpp"

using namespace branchform;

namespace {

std::optional<ErrorKind> kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

struct CliRun {
    int status;
    std::string out;
};

CliRun cli(const std::string& args) {
    std::string cmd = std::string("\"") + BRANCHFORM_CLI_PATH + "\" " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int st = pclose(pipe);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST(Parse, Polynomials) {
    BivariatePoly X = BivariatePoly::X(), Y = BivariatePoly::Y();
    EXPECT_EQ(parse_polynomial("Y^4 - X^9 + X^7*Y"), Y.pow(4) - X.pow(9) + X.pow(7) * Y);
    EXPECT_EQ(parse_polynomial("y^4-x^9+x^5y^2"), Y.pow(4) - X.pow(9) + X.pow(5) * Y.pow(2));
    EXPECT_EQ(parse_polynomial("3X^2Y - 1/2 Y^3"), Rational(3) * X.pow(2) * Y - Rational(1, 2) * Y.pow(3));
    EXPECT_EQ(parse_polynomial("(Y - X)^2"), (Y - X).pow(2));
    EXPECT_EQ(parse_polynomial("-X + 2/4*Y"), Rational(1, 2) * Y - X);
}

TEST(Parse, Parametrizations) {
    PuiseuxParam a = parse_param("x=t^4; y=t^9+t^10-1/2t^11");
    EXPECT_EQ(a.x, TruncatedSeries::monomial(1, 4));
    EXPECT_EQ(a.y.coeff(11), Rational(-1, 2));
    EXPECT_TRUE(a.y.is_exact());
    PuiseuxParam b = parse_param("(t^4 + t^5, 3*t^9)");
    EXPECT_EQ(b.x.coeff(5), Rational(1));
    EXPECT_EQ(b.y.coeff(9), Rational(3));
    EXPECT_EQ(parse_param(" X = t^2 , Y = t^7 ").y, TruncatedSeries::monomial(1, 7));
    EXPECT_TRUE(looks_like_param("x=t^2; y=t^3"));
    EXPECT_FALSE(looks_like_param("Y^2 - X^3"));
}

TEST(Parse, Errors) {
    for (const char* bad : {"", "Y^", "X +* Y", "(X + Y", "Z^2", "X^-1", "X/0", "X/Y"})
        EXPECT_EQ(kind_of([&] { parse_polynomial(bad); }), ErrorKind::ParseError) << bad;
    for (const char* bad : {"t^4", "x=t^4", "x=t^4; z=t^9", "x=t^4; y=s^9"})
        EXPECT_EQ(kind_of([&] { parse_param(bad); }), ErrorKind::ParseError) << bad;
}

TEST(Report, ClassifyExamples) {
    ClassificationReport f = classify_input(detect_input("Y^4 - X^9 + X^7*Y"));
    EXPECT_EQ(f.nf.param().param_string(), "x=t^4; y=t^9 + t^10 - 1/2*t^11");
    EXPECT_TRUE(f.expansion.has_value());
    ClassificationReport a = classify_input(detect_input("x=t^4; y=t^9+t^11"));
    EXPECT_EQ(a.nf.family.row_str(), "MULT4_CASE_A(j=4)");
    EXPECT_EQ(a.nf.tjurina, 21);
    EXPECT_TRUE(a.tjurina_agrees());
    ClassificationReport m2 = classify_input(detect_input("x=t^2; y=t^7"));
    EXPECT_EQ(m2.nf.family.row, Row::Mult2);
    EXPECT_EQ(m2.nf.tjurina, 6);
}

TEST(Report, FirstCaseBMismatchIsFlagged) {
    ClassificationReport r = classify_input(detect_input("x=t^4; y=t^13+t^18+t^19"));
    EXPECT_EQ(r.nf.family.row_str(), "MULT4_CASE_B1(j=2, k=1)");
    EXPECT_EQ(r.nf.tjurina, 32);
    EXPECT_EQ(r.table_tjurina, 34);
    EXPECT_FALSE(r.tjurina_agrees());
    EXPECT_NE(render_text(r).find("MISMATCH"), std::string::npos);
    EXPECT_FALSE(to_json(r)["tjurina"]["agrees"].get<bool>());
}

TEST(Report, JsonSchema) {
    auto j = to_json(classify_input(detect_input("Y^4 - X^9 + X^7*Y")));
    EXPECT_EQ(j["schema_version"], 1);
    for (const char* key : {"input", "semigroup", "lambda_set", "zariski_lambda", "family", "normal_form", "tjurina",
                            "stratum"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["zariski_lambda"], 10);
    EXPECT_EQ(j["semigroup"]["conductor"], 24);
    EXPECT_EQ(j["normal_form"]["moduli"][0]["coeff"]["num"], -1);
    EXPECT_EQ(j["normal_form"]["moduli"][0]["coeff"]["den"], 2);
    EXPECT_EQ(j["lambda_set"]["minus_gamma"], (std::vector<int>{14, 19, 23}));
}

TEST(Report, JsonRoundTrip) {
    for (const char* in : {"Y^4 - X^9 + X^7*Y", "x=t^4; y=t^13+t^18+2/3t^19", "x=t^3; y=t^8+t^10+t^11",
                           "x=t^4; y=t^10+t^13+t^19"}) {
        auto first = to_json(classify_input(detect_input(in)));
        std::string nf = first["normal_form"]["param"];
        auto second = to_json(classify_input(detect_input(nf)));
        first.erase("input");
        second.erase("input");
        EXPECT_EQ(first, second) << in;
    }
}

TEST(Report, Table) {
    auto j = table_json(make_semigroup({4, 9}));
    std::vector<std::string> names;
    for (const auto& row : j["rows"]) names.push_back(row["family"]["name"]);
    EXPECT_EQ(names, (std::vector<std::string>{"MULT4_MONOMIAL", "MULT4_CASE_A(j=2)", "MULT4_CASE_A(j=3)",
                                               "MULT4_CASE_A(j=4)", "MULT4_CASE_B2(j=2)", "MULT4_CASE_B3(j=2)"}));
    EXPECT_EQ(table_json(make_semigroup({4, 6, 13}))["rows"][0]["stratum"]["dimension"], 0);
    EXPECT_EQ(kind_of([] { table_json(make_semigroup({4, 6, 11})); }), ErrorKind::InadmissiblePlaneBranchSemigroup);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("classify --poly \"Y^4 - X^9 + X^7*Y\"").status, 0);
    EXPECT_EQ(cli("classify --poly \"Y^4 - X^9 +\"").status, 2);
    EXPECT_EQ(cli("classify --poly \"Y^2 - X^2\"").status, 2);
    EXPECT_EQ(cli("classify --poly \"(Y - X)^2 - 2X^3\"").status, 3);
    EXPECT_EQ(cli("classify --param \"x=t^5; y=t^7\"").status, 4);
    EXPECT_EQ(cli("classify").status, 2);
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("equiv \"Y^4 - X^9 + X^7*Y\" \"x=t^4; y=t^9+t^10-1/2t^11\"").status, 0);
    EXPECT_EQ(cli("equiv --poly \"Y^4 - X^9 + X^7*Y\" --poly \"Y^4-X^9+X^5*Y^2\"").status, 1);
    EXPECT_EQ(cli("table 4 6 13").status, 0);
    EXPECT_EQ(cli("table 4 8").status, 2);
}

TEST(Cli, Output) {
    CliRun r = cli("equiv \"x=t^4; y=t^6+t^7+5t^9\" \"x=t^4; y=t^6+t^7\"");
    EXPECT_NE(r.out.find("EQUIVALENT witness (u, n) = (0, 1)"), std::string::npos) << r.out;
    CliRun n = cli("equiv --poly \"Y^4 - X^9 + X^7*Y\" --poly \"Y^4-X^9+X^5*Y^2\"");
    EXPECT_NE(n.out.find("NOT_EQUIVALENT: different Lambda"), std::string::npos) << n.out;
    CliRun e = cli("expand --poly \"Y^4-X^9+X^7*Y\" --trunc 16");
    EXPECT_EQ(e.out, "x = t^4; y = t^9 - 1/4*t^10 - 1/32*t^11 + 7/2048*t^13 + 1/512*t^14 + 39/65536*t^15 + O(t^16)\n");
    CliRun j = cli("classify --json --param \"x=t^2; y=t^7\"");
    EXPECT_EQ(nlohmann::json::parse(j.out)["tjurina"]["value"], 6);
    CliRun v = cli("verify --v1-max 9 --samples 1 --seed 1");
    EXPECT_EQ(v.status, 0);
    EXPECT_NE(v.out.find("ALL PASS"), std::string::npos);
}
