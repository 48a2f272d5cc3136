#include "valjet/genseq.hpp"

#include <gtest/gtest.h>

using namespace valjet;

namespace {

MultiPoly P(const std::string &s) { return parse_poly(s, {"x0", "x1"}); }

ContactProfile profile_of(const std::string &f) { return ContactProfile(newton_puiseux(P(f), 64), P(f)); }

const char *kQuartic = "(x1^2-x0^3)^2-x0^6*x1";
const char *kOctic = "((x1^2-x0^3-x0^4)^2-x0^8*x1)^2-x0^13*x1*(x1^2-x0^3-x0^4)";
const char *kOcticMisprint = "((x1^2-x0^3-x0^4)^2-x0^8*x1)^2-x0^3*x1*(x1^2-x0^3-x0^4)";

std::vector<long> values(const GenSeq &gs) {
    std::vector<long> v;
    for (const auto &e : gs.elements)
        if (e.value)
            v.push_back(*e.value);
    return v;
}

} // namespace

TEST(GenSeq, QuarticBranch) {
    auto gs = run_genseq(P(kQuartic));
    ASSERT_EQ(gs.elements.size(), 4u);
    EXPECT_EQ(gs.elements[2].poly, P("x1^2 - x0^3"));
    EXPECT_EQ(gs.elements[3].poly, P(kQuartic));
    EXPECT_FALSE(gs.elements[3].value);
    EXPECT_EQ(values(gs), (std::vector<long>{4, 6, 15}));
    ASSERT_EQ(gs.log.size(), 1u);
    EXPECT_EQ(gs.log[0].mu, 29);
    EXPECT_EQ(gs.log[0].l, 1u);
    EXPECT_EQ(gs.log[0].q_prime, parse_poly("-x0^6*x1"));
}

TEST(GenSeq, OcticBranch) {
    auto gs = run_genseq(P(kOctic));
    ASSERT_EQ(gs.log.size(), 3u);
    EXPECT_EQ(gs.log[0].mu, 127);
    EXPECT_EQ(gs.log[0].l, 4u);
    EXPECT_EQ(gs.log[0].claim, 1);
    EXPECT_EQ(gs.log[0].q_prime, parse_poly("-x0^4"));
    EXPECT_EQ(gs.log[1].mu, 151);
    EXPECT_EQ(gs.log[1].l, 2u);
    EXPECT_EQ(gs.log[1].claim, 2);
    EXPECT_EQ(gs.log[1].q_prime, parse_poly("-x0^8*x1"));
    EXPECT_EQ(gs.log[2].mu, 153);
    EXPECT_EQ(gs.log[2].l, 1u);
    ASSERT_EQ(gs.elements.size(), 5u);
    EXPECT_EQ(gs.elements[2].poly, P("x1^2 - x0^3 - x0^4"));
    EXPECT_EQ(gs.elements[3].poly, P("(x1^2 - x0^3 - x0^4)^2 - x0^8*x1"));
    EXPECT_EQ(values(gs), (std::vector<long>{8, 12, 38, 77}));
    EXPECT_EQ(gs.mu_settled, (std::vector<long>{151, 153}));
    EXPECT_EQ(gs.l_history, (std::vector<long>{4, 2, 1}));
    // The last correction recovers the curve itself.
    EXPECT_EQ(gs.elements[3].poly.pow(2) + expand_generators(gs.log[2].q_prime, gs.elements), P(kOctic));
}

TEST(GenSeq, MisprintedOcticIsReducible) {
    // Exponent 3 in place of 13 gives a Newton polygon with several edges.
    EXPECT_THROW(run_genseq(P(kOcticMisprint)), AlgebraError);
}

TEST(GenSeq, TrivialCases) {
    auto gs = run_genseq(P("x1^2 - x0^3"));
    ASSERT_EQ(gs.elements.size(), 3u);
    EXPECT_EQ(gs.elements[2].poly, P("x1^2 - x0^3"));
    EXPECT_EQ(values(gs), (std::vector<long>{2, 3}));
    EXPECT_TRUE(gs.log.empty());
    EXPECT_EQ(values(run_genseq(P("x1^4 - x0^7"))), (std::vector<long>{4, 7}));
}

TEST(GenSeq, MaximalContactRequired) {
    auto profile = profile_of("(x1 - x0^2)^2 - x0^5");
    EXPECT_THROW(initial_state(profile), AlgebraError);
}

TEST(GenSeq, StepOperations) {
    auto profile = profile_of(kOctic);
    auto st = initial_state(profile);
    EXPECT_EQ(st.current, P("x1^2 - x0^3"));
    const long mu = detect_mu(st, profile, 96);
    EXPECT_EQ(mu, 127);
    const auto ql = extract_Ql(profile, st, mu);
    EXPECT_EQ(ql.l, 4u);
    // Q = x_{2,0}#32 - (x0#8)^4 at the generic point of C_127.
    const int K = profile.tail_for_level(127);
    const auto arc = contact_arc(profile.param(), 128, K);
    const MultiPoly Q = compose_contact(st.current, arc).coefficient(32) -
                        compose_contact(P("x0"), arc).coefficient(8).pow(4);
    EXPECT_EQ(ql.q_power, Q.pow(4));
    EXPECT_EQ(solve_correction(profile, st, ql, mu), parse_poly("-x0^4"));

    auto p38 = profile_of(kQuartic);
    auto s38 = initial_state(p38);
    EXPECT_EQ(detect_mu(s38, p38, 24), 29);
    EXPECT_EQ(extract_Ql(p38, s38, 29).l, 1u);
}

TEST(GenSeq, Catalogue) {
    for (const char *f : {"x1^2 - x0^3", "x1^4 - x0^7", kQuartic, "(x1^3-x0^4)^2-x0^7*x1", "(x1^2-x0^5)^2-x0^8*x1",
                          "(x1^2-x0^3)^2-x0^7*x1", kOctic}) {
        auto profile = profile_of(f);
        const auto sg = profile.semigroup();
        const auto gs = run_genseq(profile);
        const auto g = static_cast<std::size_t>(sg.g);
        ASSERT_EQ(gs.elements.size(), g + 2) << f;
        for (std::size_t i = 0; i <= g; ++i) {
            EXPECT_EQ(*gs.elements[i].value, sg.beta_bar[i]) << f;
            EXPECT_EQ(*nu_C(gs.elements[i].poly, profile).value, sg.beta_bar[i]) << f;
        }
        if (g >= 2) {
            ASSERT_EQ(gs.mu_settled.size(), g - 1) << f;
            for (std::size_t i = 2; i <= g; ++i)
                EXPECT_EQ(gs.mu_settled[i - 2], sg.e[i - 1] * sg.beta_bar[i] - 1) << f;
            for (std::size_t i = 0; i < g; ++i)
                EXPECT_EQ(gs.l_history[i], sg.e[i + 1]) << f;
        }
        for (std::size_t i = 1; i < gs.l_history.size(); ++i) {
            EXPECT_LT(gs.l_history[i], gs.l_history[i - 1]);
            EXPECT_EQ(gs.l_history[i - 1] % gs.l_history[i], 0);
        }
        const auto rep = verify_genseq(gs, profile);
        EXPECT_TRUE(rep.ok) << f;
        for (const auto &line : rep.lines)
            EXPECT_EQ(line.rfind("FAIL", 0), std::string::npos) << f << ": " << line;
    }
}

TEST(Divisorial, Examples) {
    auto cusp = profile_of("x1^2 - x0^3");
    auto gs = run_genseq_divisorial(cusp, 7);
    ASSERT_EQ(gs.elements.size(), 3u);
    EXPECT_EQ(gs.elements[2].poly, P("x1^2 - x0^3"));
    EXPECT_EQ(values(gs), (std::vector<long>{2, 3, 7}));
    EXPECT_EQ(values(run_genseq_divisorial(cusp, 6)), (std::vector<long>{2, 3}));
    EXPECT_THROW(run_genseq_divisorial(cusp, 5), AlgebraError);

    auto c38 = profile_of(kQuartic);
    auto at = run_genseq_divisorial(c38, 30);
    EXPECT_EQ(values(at), (std::vector<long>{4, 6, 15}));
    EXPECT_EQ(at.elements[2].poly, P("x1^2 - x0^3"));
    for (long p : {31L, 33L}) {
        auto gs38 = run_genseq_divisorial(c38, p);
        EXPECT_EQ(values(gs38), (std::vector<long>{4, 6, 15, p}));
        EXPECT_EQ(nu_E(gs38.elements.back().poly, c38, p), p);
        EXPECT_TRUE(verify_genseq(gs38, c38).ok);
    }
}

TEST(ApproximateRoots, Examples) {
    EXPECT_EQ(approximate_root(P(kQuartic), 2), P("x1^2 - x0^3"));
    EXPECT_EQ(approximate_root(P("x1^2 - x0^3"), 2), P("x1"));
    EXPECT_EQ(approximate_root(P("x1^2 + 2*x0*x1 - x0^3"), 2), P("x1 + x0"));
    EXPECT_THROW(approximate_root(P("2*x1^2 - x0^3"), 2), AlgebraError);
    EXPECT_THROW(approximate_root(P("x1^3 - x0^3"), 2), AlgebraError);
    auto profile = profile_of(kOctic);
    const auto roots = approximate_roots_oracle(P(kOctic), profile.semigroup());
    ASSERT_EQ(roots.size(), 3u);
    EXPECT_EQ(roots[2].degree_in("x1"), 4u);
    EXPECT_EQ(*branch_value(roots[2], profile), 77);
    const MultiPoly diff = P(kOctic) - roots[2].pow(2);
    EXPECT_LT(diff.degree_in("x1"), 4u);
}
