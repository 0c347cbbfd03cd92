#include "cli.hpp"

#include "conical/metric.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

using namespace conical;
using namespace conical::cli;
using json = nlohmann::ordered_json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args, bool tty = false)
{
    args.insert(args.begin(), "conical-metric");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(int(argv.size()), argv.data(), out, err, tty);
    return {code, out.str(), err.str()};
}

std::vector<std::string> with_orders(const std::string& cmd, const std::string& a, const std::string& b,
                                     const std::string& g, std::vector<std::string> rest = {})
{
    std::vector<std::string> v{cmd, "--alpha", a, "--beta", b, "--gamma", g};
    v.insert(v.end(), rest.begin(), rest.end());
    return v;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

void expect_round_trip(const std::string& text)
{
    EXPECT_EQ(json::parse(text).dump(2) + "\n", text);
}

} // namespace

TEST(ParseComplex, Forms)
{
    EXPECT_EQ(parse_complex("0.3+0.4i"), cplx(0.3, 0.4));
    EXPECT_EQ(parse_complex("0.3-0.4i"), cplx(0.3, -0.4));
    EXPECT_EQ(parse_complex("-1e-3+2E2i"), cplx(-1e-3, 200));
    EXPECT_EQ(parse_complex("1+0i"), cplx(1, 0));
    EXPECT_EQ(parse_complex("0.01"), cplx(0.01, 0));
    EXPECT_EQ(parse_complex("-2i"), cplx(0, -2));
    EXPECT_EQ(parse_complex("i"), cplx(0, 1));
    EXPECT_EQ(parse_complex("1-i"), cplx(1, -1));
    EXPECT_EQ(parse_complex(".5+.5i"), cplx(0.5, 0.5));
    for (const char* bad : {"0.3 +0.4i", "0.3+ 0.4i", " 1", "1+2", "1+2j", "", "i1", "1..2", "1e+i", "--1"})
        EXPECT_FALSE(parse_complex(bad).has_value()) << bad;
}

TEST(ParseComplex, RoundSig)
{
    EXPECT_EQ(round_sig(0.123456789, 6), 0.123457);
    EXPECT_EQ(round_sig(-4.0, 15), -4.0);
    EXPECT_EQ(round_sig(0.0, 6), 0.0);
}

TEST(Cli, Constants)
{
    Result r = call(with_orders("constants", "0.9", "0.9", "0.9"));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    json j = json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["a"].get<double>(), 0.45);
    EXPECT_FALSE(j["is_cusp"].get<bool>());
    expect_round_trip(r.out);

    r = call(with_orders("constants", "1", "0.9", "0.9"));
    ASSERT_EQ(r.code, exit_ok);
    j = json::parse(r.out);
    EXPECT_EQ(j["K2"].get<double>(), 0.0);
    EXPECT_TRUE(j["delta"].is_null());
    EXPECT_TRUE(j["is_cusp"].get<bool>());

    r = call(with_orders("constants", "0.5", "0.5", "0.5"));
    EXPECT_EQ(r.code, exit_input);
    EXPECT_EQ(lines(r.err).size(), 1u);
    EXPECT_NE(r.err.find("exceed 2"), std::string::npos);
}

TEST(Cli, EvalFormulasAgree)
{
    auto f1 = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "0.3+0.4i", "--formula", "f1"}));
    auto f2 = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "0.3+0.4i", "--formula", "f2"}));
    ASSERT_EQ(f1.code, exit_ok) << f1.err;
    ASSERT_EQ(f2.code, exit_ok) << f2.err;
    const double l1 = json::parse(f1.out)["lambda"], l2 = json::parse(f2.out)["lambda"];
    EXPECT_NEAR(l1, l2, 1e-9 * l1);
    EXPECT_EQ(json::parse(f1.out)["path"], "f1");
    EXPECT_EQ(json::parse(f2.out)["path"], "f2");
    expect_round_trip(f1.out);

    const MetricConstants mc = derive_constants({0.9, 0.9, 0.9});
    EXPECT_NEAR(l1, lambda(mc, cplx(0.3, 0.4)), 1e-14 * l1);
}

TEST(Cli, EvalErrors)
{
    auto r = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "1+0i"}));
    EXPECT_EQ(r.code, exit_domain);
    r = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "2+0i"}));
    EXPECT_EQ(r.code, exit_domain);
    EXPECT_NE(r.err.find("[1,+inf)"), std::string::npos) << r.err;
    r = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "0.3 +0.4i"}));
    EXPECT_EQ(r.code, exit_input);
    r = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "0.3+0.4i", "--formula", "f3"}));
    EXPECT_EQ(r.code, exit_input);
    r = call(with_orders("eval", "1", "0.9", "0.9", {"--z", "0.3+0.4i", "--formula", "f2"}));
    EXPECT_EQ(r.code, exit_input);
    r = call(with_orders("eval", "0.9", "0.9", "0.9", {"--z", "0.3+0.4i", "--precision", "5"}));
    EXPECT_EQ(r.code, exit_input);
    r = call({"eval", "--alpha", "0.9"});
    EXPECT_EQ(r.code, exit_input);
}

TEST(Cli, EvalCusp)
{
    auto r = call(with_orders("eval", "1", "0.9", "0.9", {"--z", "0.01"}));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["path"], "cusp");
    // mpmath, tools/oracle/metric_oracle.py
    EXPECT_NEAR(j["lambda"].get<double>(), 6.7359907675007562258, 1e-12);
}

TEST(Cli, DefaultFormat)
{
    auto args = with_orders("constants", "0.9", "0.9", "0.9");
    EXPECT_EQ(call(args, true).out.rfind("alpha", 0), 0u);
    EXPECT_EQ(call(args, false).out.rfind("{", 0), 0u);
    args.insert(args.end(), {"--format", "csv"});
    auto csv = lines(call(args, true).out);
    ASSERT_EQ(csv.size(), 2u);
    EXPECT_EQ(csv[0].rfind("alpha,beta,gamma,a,b,c", 0), 0u);
}

TEST(Cli, Precision)
{
    auto r = call(with_orders("constants", "0.9", "0.9", "0.9", {"--precision", "6"}));
    ASSERT_EQ(r.code, exit_ok);
    EXPECT_DOUBLE_EQ(json::parse(r.out)["K3"].get<double>(), 0.216444);
    expect_round_trip(r.out);
}

TEST(Cli, Curvature)
{
    for (const char* a : {"0.9", "1"}) {
        auto r = call(with_orders("curvature", a, "0.9", "0.9"));
        ASSERT_EQ(r.code, exit_ok) << r.err;
        auto rows = lines(r.out);
        ASSERT_EQ(rows.size(), 101u);
        EXPECT_EQ(rows[0], "re,im,kappa");
        EXPECT_NE(r.err.find("max_abs_kappa_plus_4"), std::string::npos);

        auto j = call(with_orders("curvature", a, "0.9", "0.9", {"--format", "json"}));
        json doc = json::parse(j.out);
        EXPECT_LE(doc["max_abs_kappa_plus_4"].get<double>(), 1e-4);
        EXPECT_EQ(doc["points"].size(), 100u);
        expect_round_trip(j.out);
    }
}

TEST(Cli, CurvatureSinglePointMatchesLibrary)
{
    auto r = call(with_orders("curvature", "0.7", "0.9", "0.8",
                              {"--window=0.2,0.4,0.3,0.5", "--res", "1", "--format", "json", "--precision", "17"}));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    json p = json::parse(r.out)["points"][0];
    const MetricConstants mc = derive_constants({0.7, 0.9, 0.8});
    EXPECT_EQ(p["kappa"].get<double>(), curvature_fd(mc, cplx(0.3, 0.4), 1e-3));
}

TEST(Cli, CurvatureSkipsNearCuts)
{
    auto r = call(with_orders("curvature", "0.9", "0.9", "0.9", {"--res", "3", "--format", "json"}));
    ASSERT_EQ(r.code, exit_ok);
    json doc = json::parse(r.out);
    EXPECT_EQ(doc["skipped"].get<int>(), 2);  // -0.5 and 1.5 on the real axis
    EXPECT_TRUE(doc["points"][3]["kappa"].is_null());
}

TEST(Cli, CurvatureSampledIsSeeded)
{
    auto a = call(with_orders("curvature", "0.9", "0.9", "0.9", {"--samples", "5", "--seed", "7"}));
    auto b = call(with_orders("curvature", "0.9", "0.9", "0.9", {"--samples", "5", "--seed", "7"}));
    auto c = call(with_orders("curvature", "0.9", "0.9", "0.9", {"--samples", "5", "--seed", "8"}));
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    EXPECT_EQ(lines(a.out).size(), 6u);
}

TEST(Cli, Grid)
{
    auto r = call(with_orders("grid", "0.9", "0.9", "0.9", {"--window=-1,2,-1,1", "--res", "10x10"}));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows[0], "re,im,lambda");

    auto j = call(with_orders("grid", "0.9", "0.9", "0.9", {"--res", "10x10", "--format", "json", "--precision", "17"}));
    json pts = json::parse(j.out)["points"];
    const MetricConstants mc = derive_constants({0.9, 0.9, 0.9});
    for (const auto& p : pts) {
        ASSERT_FALSE(p["lambda"].is_null());
        EXPECT_GT(p["lambda"].get<double>(), 0);
    }
    const auto& p7 = pts[37];
    EXPECT_EQ(p7["lambda"].get<double>(), lambda(mc, cplx(p7["re"].get<double>(), p7["im"].get<double>())));
    expect_round_trip(j.out);
}

TEST(Cli, GridExcludedPointsEmpty)
{
    auto r = call(with_orders("grid", "0.9", "0.9", "0.9", {"--res", "3"}));
    auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[4], "-0.5,0,");
    EXPECT_EQ(rows[6], "1.5,0,");
    EXPECT_EQ(call(with_orders("grid", "0.9", "0.9", "0.9", {"--res", "4096x4096"})).code, exit_input);
    EXPECT_EQ(call(with_orders("grid", "0.9", "0.9", "0.9", {"--window", "1,0,0,1"})).code, exit_input);
}

TEST(Cli, LimitsPu)
{
    auto r = call(with_orders("limits", "0.9", "0.95", "0.9", {"--case", "pu"}));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    json doc = json::parse(r.out);
    EXPECT_TRUE(doc["all_converged"].get<bool>());
    const std::vector<std::string> keys{"case",        "m",           "n",       "direction", "target_re",
                                        "target_im",   "estimate_re", "estimate_im", "rel_err", "converged"};
    for (const auto& rep : doc["reports"]) {
        std::vector<std::string> got;
        for (const auto& [k, v] : rep.items())
            got.push_back(k);
        EXPECT_EQ(got, keys);
        EXPECT_EQ(rep["case"].get<std::string>().rfind("Pu", 0), 0u);
    }
    expect_round_trip(r.out);
}

TEST(Cli, LimitsLctilte)
{
    auto r = call(with_orders("limits", "1", "0.9", "0.9", {"--case", "lctilte", "--m", "0", "--n", "0"}));
    ASSERT_EQ(r.code, exit_ok) << r.err;
    json doc = json::parse(r.out);
    ASSERT_EQ(doc["reports"].size(), 4u);
    for (const auto& rep : doc["reports"])
        EXPECT_EQ(rep["target_re"].get<double>(), 0.5);
}

TEST(Cli, LimitsErrors)
{
    EXPECT_EQ(call(with_orders("limits", "0.9", "0.9", "0.9", {"--case", "minda"})).code, exit_input);
    EXPECT_EQ(call(with_orders("limits", "0.9", "0.9", "0.9", {"--case", "nosuch"})).code, exit_input);
    EXPECT_EQ(call(with_orders("limits", "0.7", "0.9", "0.8", {"--case", "mz1"})).code, exit_input);
    EXPECT_EQ(call(with_orders("limits", "0.9", "0.9", "0.9", {"--case", "l0", "--count", "60"})).code, exit_input);
    // too few points below the fit window: reported, not thrown
    auto r = call(with_orders("limits", "1", "0.9", "0.9", {"--case", "minda_i", "--count", "5", "--direction", "1"}));
    EXPECT_EQ(r.code, exit_verify);
    EXPECT_NE(r.err.find("Minda_i"), std::string::npos);
}

TEST(Cli, LimitsDeterministic)
{
    auto args = with_orders("limits", "0.7", "0.9", "0.8", {"--case", "mz"});
    auto a = call(args), b = call(args);
    EXPECT_EQ(a.code, exit_ok) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, Specfun)
{
    auto r = call({"specfun", "--a", "0.5", "--b", "0.5", "--c", "1", "--z", "0.9+0.1i"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["region"], "NearOneLog");
    const cplx want = hyp2f1({0.5, 0.5, 1}, cplx(0.9, 0.1));
    EXPECT_NEAR(j["value_re"].get<double>(), want.real(), 1e-14);
    EXPECT_NEAR(j["value_im"].get<double>(), want.imag(), 1e-14);
    EXPECT_EQ(call({"specfun", "--a", "0.5", "--b", "0.5", "--c", "1", "--z", "2+0i"}).code, exit_domain);
}
