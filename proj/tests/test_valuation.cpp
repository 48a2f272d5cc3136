#include "oracles.hpp"
#include "valjet/valuation.hpp"

#include <gtest/gtest.h>

using namespace valjet;

namespace {

MultiPoly P(const std::string &s) { return parse_poly(s, {"x0", "x1"}); }

BranchParam closed(int n, std::vector<std::pair<int, Rat>> terms, int truncation) {
    BranchParam p;
    p.n = n;
    p.x1_terms = std::move(terms);
    p.truncation = truncation;
    p.closed_form = true;
    return p;
}

const char *kQuartic = "(x1^2-x0^3)^2-x0^6*x1";
const char *kOctic = "((x1^2-x0^3-x0^4)^2-x0^8*x1)^2-x0^13*x1*(x1^2-x0^3-x0^4)";
const char *kH1 = "(x1^2-x0^3)^2-4*x0^5*x1-x0^7";

} // namespace

TEST(NuC, QuarticValue26) {
    ContactProfile profile(newton_puiseux(P(kQuartic), 40));
    auto r = nu_C(P(kH1), profile);
    ASSERT_TRUE(r.value);
    EXPECT_EQ(*r.value, 26);
    EXPECT_EQ(r.kappa, 26);
    EXPECT_EQ(r.level_used, 26);
    // The certificate is H^(26) at the generic point of C_26, which agrees
    // with -4 (x0#4)^5 x1#6 there.
    auto jet = generic_jet(profile.param(), r.level_used, JetModel::reduced, r.tail);
    EXPECT_EQ(r.witness, evaluate_at_jet(parse_poly("-4*x0#4^5*x1#6"), jet));
    auto F = expand_jets(P(kH1), 26);
    EXPECT_EQ(evaluate_at_jet(F.F[26], jet), r.witness);
    for (int i = 0; i < 26; ++i)
        EXPECT_TRUE(evaluate_at_jet(F.F[static_cast<std::size_t>(i)], jet).is_zero()) << i;
    auto in = initial_form(P(kH1), profile);
    EXPECT_EQ(in.P, P("-4*x0^5*x1"));
}

TEST(NuC, QuarticApproximateRoot) {
    ContactProfile profile(newton_puiseux(P(kQuartic), 40));
    auto r = nu_C(P("x1^2 - x0^3"), profile);
    EXPECT_EQ(*r.value, 15);
    EXPECT_EQ(r.kappa, 30);
    EXPECT_EQ(r.level_used, 30);
    EXPECT_EQ(initial_form(P("x1^2 - x0^3"), profile).P, P("x1^2 - x0^3"));
    // Below kappa the generic point of C_m does not see the value.
    auto early = compose_contact(P("x1^2 - x0^3"), contact_arc(profile.param(), 26, profile.tail_for_level(26)));
    EXPECT_LT(early.order(), 15);
}

TEST(NuC, Transversal) {
    for (const char *f : {"x1^2 - x0^3", kQuartic, kOctic}) {
        auto p = newton_puiseux(P(f), 40);
        EXPECT_EQ(*nu_C(P("x0"), p).value, p.n);
        EXPECT_EQ(initial_form(P("x0"), p).P, P("x0"));
    }
}

TEST(NuC, VanishesOnBranch) {
    auto p = newton_puiseux(P(kQuartic), 40);
    auto r = nu_C(P(kQuartic) * P("1 + x0"), p);
    EXPECT_FALSE(r.value.has_value());
    EXPECT_THROW(initial_form(P(kQuartic), p), AlgebraError);
}

TEST(Kappa, Examples) {
    EXPECT_EQ(kappa_bound(26, 4, 4), 26);
    EXPECT_EQ(kappa_bound(15, 4, 2), 30);
    EXPECT_EQ(kappa_bound(1, 2, 1), 2);
    EXPECT_EQ(kappa_bound(15, P(kQuartic), P("x1^2 - x0^3")), 30);
}

TEST(NewtonEstimate, Examples) {
    auto sg = semigroup(closed(2, {{3, Rat(1)}}, 10));
    auto f = newton_form(P("x1^2 - x0^3"));
    auto a = newton_estimate(newton_form(P("x1^3 - x0^2")), f, sg);
    EXPECT_EQ(a.value, 4);
    EXPECT_EQ(a.kind, InitialKind::monomial_x0);
    EXPECT_EQ(a.initial, P("x0^2"));
    EXPECT_EQ(*nu_C(P("x1^3 - x0^2"), closed(2, {{3, Rat(1)}}, 20)).value, 4);
    auto b = newton_estimate(newton_form(P("x1^2 - 5*x0^3")), f, sg);
    EXPECT_EQ(b.value, 6);
    EXPECT_EQ(b.kind, InitialKind::binomial_power);
    EXPECT_EQ(b.initial, P("x1^2 - 5*x0^3"));
    EXPECT_EQ(newton_estimate(newton_form(P("x0")), f, sg).value, 2);
    EXPECT_THROW(newton_estimate(newton_form(P("x1^2 - x0^3 + x0^5")), f, sg), AlgebraError);
}

TEST(NewtonEstimate, AgreesWithComposition) {
    auto p = newton_puiseux(P(kQuartic), 60);
    auto sg = semigroup(p);
    auto f = newton_form(P(kQuartic));
    EXPECT_EQ(f.n, 2);
    EXPECT_EQ(f.m, 3);
    EXPECT_EQ(f.delta, 2);
    for (const char *h : {"x1^3 - x0^2", "x1 - x0^2", "x1^2 - 3*x0^3", "(x1^2 - 2*x0^3)^2 + x0^7", "x1^5 + x0^3"}) {
        auto est = newton_estimate(newton_form(P(h)), f, sg);
        EXPECT_EQ(est.value, *nu_C(P(h), p).value) << h;
    }
}

TEST(InitialForm, Properties) {
    std::mt19937_64 rng(21);
    ContactProfile profile(newton_puiseux(P(kQuartic), 60));
    int checked = 0;
    while (checked < 15) {
        const MultiPoly h = oracle::random_plane_poly(rng, 5, 4);
        auto v = branch_value(h, profile);
        if (!v)
            continue;
        auto in = initial_form(h, profile);
        EXPECT_EQ(in.value, *v);
        for (const auto &[e, c] : in.P.terms())
            EXPECT_EQ(h.with_variables({"x0", "x1"}).coefficient(e), c);
        const MultiPoly rest = h - in.P;
        if (!rest.is_zero()) {
            auto rv = branch_value(rest, profile);
            EXPECT_TRUE(!rv || *rv > *v) << render_poly(h);
        }
        // Dropping any single term of P breaks the congruence.
        for (const auto &[e, c] : in.P.terms()) {
            MultiPoly smaller = in.P;
            smaller.add_term(e, -c);
            const MultiPoly r2 = h - smaller;
            auto rv = branch_value(r2, profile);
            EXPECT_TRUE(rv && *rv <= *v) << render_poly(h);
        }
        ++checked;
    }
}

TEST(NuC, ResultantOracle) {
    std::mt19937_64 rng(99);
    const std::vector<std::string> catalogue{"x1^2 - x0^3", kQuartic, "x1^4 - x0^7", "x1^3 - x0^5", kOctic};
    int checked = 0;
    while (checked < 25) {
        const std::string &f = catalogue[rng() % catalogue.size()];
        const MultiPoly h = oracle::random_plane_poly(rng, 3, 4);
        ContactProfile profile(newton_puiseux(P(f), 40));
        auto r = nu_C(h, profile);
        const long expect = oracle::resultant_order(P(f), h);
        if (expect < 0) {
            EXPECT_FALSE(r.value);
            continue;
        }
        ASSERT_TRUE(r.value) << f << " / " << render_poly(h);
        EXPECT_EQ(*r.value, expect) << f << " / " << render_poly(h);
        ++checked;
    }
}

TEST(NuC, ValuationAxiomsAndSemigroup) {
    std::mt19937_64 rng(5);
    ContactProfile profile(newton_puiseux(P(kOctic), 80));
    const auto &sg = profile.semigroup();
    for (int i = 0; i < 15; ++i) {
        const MultiPoly a = oracle::random_plane_poly(rng), b = oracle::random_plane_poly(rng);
        auto va = branch_value(a, profile), vb = branch_value(b, profile);
        ASSERT_TRUE(va && vb);
        EXPECT_TRUE(sg.contains(*va));
        EXPECT_EQ(*branch_value(a * b, profile), *va + *vb);
        const MultiPoly s = a + b;
        if (!s.is_zero()) {
            auto vs = branch_value(s, profile);
            if (*va != *vb)
                EXPECT_EQ(*vs, std::min(*va, *vb));
            else
                EXPECT_TRUE(!vs || *vs >= *va);
        }
    }
}

TEST(NuE, CuspContactSeven) {
    auto cusp = closed(2, {{3, Rat(1)}}, 40);
    EXPECT_EQ(nu_E(P("x0"), cusp, 7), 2);
    EXPECT_EQ(nu_E(P("x1"), cusp, 7), 3);
    EXPECT_EQ(nu_E(P("x1^2 - x0^3"), cusp, 7), 7);
    EXPECT_THROW(nu_E(P("x0"), cusp, 5), AlgebraError);
}

TEST(NuE, BoundedByCurveValuation) {
    std::mt19937_64 rng(17);
    ContactProfile profile(newton_puiseux(P(kQuartic), 80));
    for (long p : {30L, 31L, 34L}) {
        EXPECT_EQ(nu_E(P(kQuartic), profile, p), p);
        for (int i = 0; i < 8; ++i) {
            const MultiPoly h = oracle::random_plane_poly(rng);
            auto v = branch_value(h, profile);
            const long e = nu_E(h, profile, p);
            if (v)
                EXPECT_LE(e, *v);
        }
    }
}
