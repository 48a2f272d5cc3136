#include "valjet/genseq.hpp"

#include <functional>
#include <random>
#include <set>

namespace valjet {

namespace {

const std::vector<std::string> kPlane{"x0", "x1"};
const std::vector<std::string> kParams{"u1", "w0"};

std::string gen_name(int k) { return "x" + std::to_string(k); }

// Generic point of C_mu, carried through t^(mu+1).
struct Arc {
    std::pair<ContactSeries, ContactSeries> xy;
};

Arc generic_point(ContactProfile &profile, long mu) {
    const int m = static_cast<int>(mu);
    const int K = profile.tail_for_level(m);
    profile.reserve(m + 1);
    return {contact_arc(profile.param(), m + 1, K)};
}

MultiPoly jet_coordinate(const MultiPoly &p, const Arc &arc, long index) {
    return compose_contact(p.with_variables(kPlane), arc.xy).coefficient(static_cast<int>(index)).with_variables(kParams);
}

std::vector<unsigned> divisors(long l) {
    std::vector<unsigned> out;
    for (long d = 1; d <= l; ++d)
        if (l % d == 0)
            out.push_back(static_cast<unsigned>(d));
    return out;
}

// Exponent vectors a with sum a_k w_k = W, a_k < caps[k] (caps[k] = 0: no cap).
std::vector<std::vector<long>> normal_monomials(const std::vector<long> &w, const std::vector<long> &caps, long W) {
    std::vector<std::vector<long>> out;
    std::vector<long> a(w.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t k, long rest) {
        if (k == w.size()) {
            if (rest == 0)
                out.push_back(a);
            return;
        }
        for (long e = 0; e * w[k] <= rest && (caps[k] == 0 || e < caps[k]); ++e) {
            a[k] = e;
            rec(k + 1, rest - e * w[k]);
        }
        a[k] = 0;
    };
    rec(0, W);
    return out;
}

std::vector<long> element_caps(const SemigroupData &sg, std::size_t count) {
    std::vector<long> caps(count, 0);
    for (std::size_t k = 1; k < count; ++k)
        caps[k] = k <= sg.n_seq.size() ? sg.n_seq[k - 1] : 0;
    return caps;
}

MultiPoly generator_monomial(const std::vector<GenElement> &basis, const std::vector<long> &a, const Rat &c) {
    std::vector<std::string> names;
    for (const auto &b : basis)
        names.push_back(b.name);
    Exponent e;
    for (long x : a)
        e.push_back(static_cast<std::uint32_t>(x));
    return MultiPoly::monomial(names, e, c);
}

Rat coefficient_sum(const MultiPoly &p) {
    Rat s(0);
    for (const auto &[e, c] : p.terms())
        s += c;
    return s;
}

// Leading coefficient of h along the branch at t^v.
Rat branch_lead(const MultiPoly &h, ContactProfile &profile, long v) {
    profile.reserve(static_cast<int>(v));
    const auto arc = contact_arc(profile.param(), static_cast<int>(v), 0);
    return coefficient_sum(compose_contact(h.with_variables(kPlane), arc).coefficient(static_cast<int>(v)));
}

void check_value(const MultiPoly &p, ContactProfile &profile, long expected, const std::string &name) {
    auto v = branch_value(p, profile);
    if (!v || *v != expected)
        throw InternalError("value of " + name + " is " + (v ? std::to_string(*v) : "infinite") + ", expected " +
                            std::to_string(expected));
}

// Runs detect_mu / extract_Ql / solve_correction until l = 1. On return the
// current element is x_{g+1,0}; the result is the next search start.
long settle(GenSeqState &st, ContactProfile &profile, GenSeq &gs, long lower) {
    for (;;) {
        const long mu = detect_mu(st, profile, lower);
        const QlResult ql = extract_Ql(profile, st, mu);
        const MultiPoly qp = solve_correction(profile, st, ql, mu);
        const long l_prev = st.l_history.back();
        GenStep step{st.current_name(), mu, ql.l, 1, qp, ql.q};
        st.mu_history.push_back(mu);
        if (static_cast<long>(ql.l) == l_prev) {
            auto before = branch_value(st.current, profile);
            st.current += expand_generators(qp, st.settled);
            st.current_expr += qp;
            auto after = branch_value(st.current, profile);
            if (before && after && *after <= *before)
                throw InternalError("correction at mu = " + std::to_string(mu) + " did not raise the value");
            ++st.j;
        } else {
            step.claim = 2;
            const long value = (mu + 1) / l_prev;
            GenElement xi{gen_name(st.index()), st.current, value, st.current_expr};
            check_value(xi.poly, profile, value, xi.name);
            st.settled.push_back(xi);
            gs.mu_settled.push_back(mu);
            st.l_history.push_back(ql.l);
            st.current = xi.poly.pow(l_prev / static_cast<long>(ql.l)) + expand_generators(qp, st.settled);
            st.current_expr = MultiPoly::variable(xi.name).pow(l_prev / static_cast<long>(ql.l)) + qp;
            st.j = 0;
        }
        gs.log.push_back(step);
        lower = mu + 1;
        if (ql.l == 1)
            return lower;
    }
}

GenSeq trivial_sequence(ContactProfile &profile) {
    GenSeq gs;
    const MultiPoly x0 = MultiPoly::variable("x0", kPlane), x1 = MultiPoly::variable("x1", kPlane);
    gs.elements.push_back({"x0", x0, branch_value(x0, profile), x0});
    gs.elements.push_back({"x1", x1, branch_value(x1, profile), x1});
    return gs;
}

} // namespace

std::string GenSeqState::current_name() const {
    return "x_{" + std::to_string(index()) + "," + std::to_string(j) + "}";
}

std::vector<Tracked> GenSeqState::tracked() const {
    std::vector<Tracked> t;
    for (const auto &e : settled)
        t.push_back({e.name, e.poly});
    t.push_back({current_name(), current});
    return t;
}

MultiPoly expand_generators(const MultiPoly &p, const std::vector<GenElement> &elements) {
    std::map<std::string, MultiPoly> subs;
    for (const auto &e : elements)
        subs[e.name] = e.poly.with_variables(kPlane);
    const MultiPoly c = p.compact();
    for (const auto &v : c.variables())
        if (!subs.count(v))
            throw AlgebraError("unknown generator \"" + v + "\"");
    return c.substitute(subs).with_variables(kPlane);
}

GenSeqState initial_state(ContactProfile &profile) {
    GenSeqState st;
    st.sg = profile.semigroup();
    const SemigroupData &sg = st.sg;
    if (sg.g < 1)
        throw AlgebraError("use trivial case: smooth branch, generating sequence is x0, x1, f");
    const BranchParam &p = profile.param();
    if (p.x1_terms.empty() || p.x1_terms.front().first != sg.beta[1])
        throw AlgebraError("coordinates not normalized: x1 must have maximal contact (first exponent of x1 = " +
                           std::to_string(sg.beta[1]) + ")");
    const MultiPoly x0 = MultiPoly::variable("x0", kPlane), x1 = MultiPoly::variable("x1", kPlane);
    st.settled.push_back({"x0", x0, sg.beta_bar[0], x0});
    st.settled.push_back({"x1", x1, sg.beta_bar[1], x1});
    const long n1 = sg.n_seq[0], m1 = sg.m_seq[0];
    Rat cn(1);
    const Rat c = p.coefficient(static_cast<int>(sg.beta[1]));
    for (long i = 0; i < n1; ++i)
        cn *= c;
    st.current = x1.pow(n1) - cn * x0.pow(m1);
    st.current_expr = st.current;
    st.l_history.push_back(sg.e[1]);
    return st;
}

long detect_mu(const GenSeqState &state, ContactProfile &profile, long lower, std::optional<long> stop_at) {
    const SemigroupData &sg = state.sg;
    const long limit =
        stop_at ? *stop_at : lower + 2 * sg.beta_bar[0] * sg.beta_bar[static_cast<std::size_t>(sg.g)] + 64;
    const auto tracked = state.tracked();
    for (long m = lower; m <= limit; ++m) {
        if (stop_at && m == *stop_at)
            return m;
        const int mi = static_cast<int>(m);
        if (!stop_at && !profile.codim_jump(mi))
            continue;
        if (contact_vector(profile, mi, tracked) == contact_vector(profile, mi + 1, tracked))
            return m;
    }
    throw AlgebraError("increase truncation: no mu found in [" + std::to_string(lower) + ", " +
                       std::to_string(limit) + "]");
}

QlResult extract_Ql(ContactProfile &profile, const GenSeqState &state, long mu) {
    const Arc arc = generic_point(profile, mu);
    QlResult r;
    r.q_power = jet_coordinate(profile.curve(), arc, mu + 1);
    if (r.q_power.is_zero())
        throw InternalError("F^(" + std::to_string(mu + 1) + ") vanishes at a codimension jump");
    const auto pw = perfect_power(r.q_power, divisors(state.l_history.back()));
    r.q = pw.root;
    r.l = pw.exponent;
    return r;
}

MultiPoly solve_correction(ContactProfile &profile, const GenSeqState &state, const QlResult &ql, long mu) {
    const long l_prev = state.l_history.back();
    const long l = ql.l;
    if ((mu + 1) % l != 0 || l_prev % l != 0)
        throw InternalError("inconsistent l = " + std::to_string(l) + " at mu = " + std::to_string(mu));
    const Arc arc = generic_point(profile, mu);
    const long W = (mu + 1) / l;
    std::vector<GenElement> basis = state.settled;
    MultiPoly target;
    if (l == l_prev) {
        target = jet_coordinate(state.current, arc, W);
    } else {
        const long W1 = (mu + 1) / l_prev;
        target = jet_coordinate(state.current, arc, W1).pow(l_prev / l);
        basis.push_back({gen_name(state.index()), state.current, W1, state.current_expr});
    }
    std::vector<long> w;
    std::vector<MultiPoly> lead;
    for (const auto &b : basis) {
        w.push_back(*b.value);
        lead.push_back(jet_coordinate(b.poly, arc, *b.value));
    }
    const auto monos = normal_monomials(w, element_caps(state.sg, basis.size()), W);
    // q = lambda * target + sum d_M * M(leading coordinates).
    std::vector<MultiPoly> cols{target};
    for (const auto &a : monos) {
        MultiPoly ev = MultiPoly::constant(Rat(1), kParams);
        for (std::size_t k = 0; k < a.size(); ++k)
            ev *= lead[k].pow(a[k]);
        cols.push_back(ev);
    }
    std::set<Exponent> keys;
    const MultiPoly q = ql.q.with_variables(kParams);
    for (const auto &[e, c] : q.terms())
        keys.insert(e);
    for (const auto &col : cols)
        for (const auto &[e, c] : col.terms())
            keys.insert(e);
    LinSystem sys;
    for (const auto &e : keys) {
        std::vector<Rat> row;
        for (const auto &col : cols)
            row.push_back(col.coefficient(e));
        sys.matrix.push_back(row);
        sys.rhs.push_back(q.coefficient(e));
    }
    const LinSolution sol = lin_solve(sys);
    if (sol.status == SolveStatus::none || sol.values.empty() || sol.values[0] == 0)
        throw InternalError("claim violated: Q at mu = " + std::to_string(mu) +
                            " is not a leading coordinate plus a monomial correction");
    const Rat lambda = sol.values[0];
    std::vector<std::string> names;
    for (const auto &b : basis)
        names.push_back(b.name);
    MultiPoly qp(names);
    for (std::size_t i = 0; i < monos.size(); ++i)
        if (sol.values[i + 1] != 0)
            qp += generator_monomial(basis, monos[i], sol.values[i + 1] / lambda);
    return qp;
}

GenSeq run_genseq(ContactProfile &profile) {
    const SemigroupData sg = profile.semigroup();
    const MultiPoly f = profile.curve().with_variables(kPlane);
    if (sg.g < 2) {
        GenSeq gs = trivial_sequence(profile);
        gs.elements.push_back({"f", f, std::nullopt, f});
        if (sg.g == 1)
            gs.l_history = {sg.e[1]};
        return gs;
    }
    GenSeq gs;
    GenSeqState st = initial_state(profile);
    settle(st, profile, gs, sg.beta_bar[0] * sg.beta_bar[1]);
    if (st.index() != sg.g + 1)
        throw InternalError("construction stopped after " + std::to_string(st.index() - 1) +
                            " generators, semigroup has g = " + std::to_string(sg.g));
    gs.elements = st.settled;
    gs.elements.push_back({"f", f, std::nullopt, f});
    gs.l_history = st.l_history;
    return gs;
}

GenSeq run_genseq(const BranchParam &param) {
    ContactProfile profile(param);
    return run_genseq(profile);
}

GenSeq run_genseq(const MultiPoly &f) {
    ContactProfile profile(newton_puiseux(f, 64), f.with_variables(kPlane));
    return run_genseq(profile);
}

GenSeq run_genseq_divisorial(ContactProfile &profile, long p) {
    const SemigroupData sg = profile.semigroup();
    if (sg.g < 1)
        throw AlgebraError("use trivial case: smooth branch");
    const auto g = static_cast<std::size_t>(sg.g);
    const long threshold = sg.n_seq[g - 1] * sg.beta_bar[g];
    if (p < threshold)
        throw AlgebraError("contact order p = " + std::to_string(p) + " is below n_g*beta_g = " +
                           std::to_string(threshold));
    GenSeq gs;
    gs.divisorial = true;
    gs.p = p;
    GenSeqState st = initial_state(profile);
    long lower = sg.beta_bar[0] * sg.beta_bar[1];
    if (sg.g >= 2)
        lower = settle(st, profile, gs, lower);
    else
        st.l_history = {1};
    gs.l_history = st.l_history;
    if (p == threshold) {
        gs.elements = st.settled;
        return gs;
    }
    // Codimension grows by one at every level here: stabilization alone.
    for (;;) {
        const long mu = detect_mu(st, profile, lower, p - 1);
        if (mu >= p - 1)
            break;
        const QlResult ql = extract_Ql(profile, st, mu);
        const MultiPoly qp = solve_correction(profile, st, ql, mu);
        gs.log.push_back({st.current_name(), mu, ql.l, 1, qp, ql.q});
        st.current += expand_generators(qp, st.settled);
        st.current_expr += qp;
        ++st.j;
        lower = mu + 1;
    }
    const long ve = nu_E(st.current, profile, p);
    if (ve != p)
        throw InternalError("nu_E of the last generator is " + std::to_string(ve) + ", expected " + std::to_string(p));
    gs.elements = st.settled;
    gs.elements.push_back({gen_name(st.index()), st.current, p, st.current_expr});
    return gs;
}

GenSeq run_genseq_divisorial(const BranchParam &param, long p) {
    ContactProfile profile(param);
    return run_genseq_divisorial(profile, p);
}

MultiPoly approximate_root(const MultiPoly &f, long e) {
    const MultiPoly fp = f.with_variables(kPlane);
    const auto c = fp.coefficients_in("x1");
    const long n = static_cast<long>(c.size()) - 1;
    if (n < 1 || c.back() != MultiPoly::constant(Rat(1), kPlane))
        throw AlgebraError("approximate roots need a polynomial monic in x1");
    if (e < 1 || n % e != 0)
        throw AlgebraError("approximate root degree: " + std::to_string(e) + " does not divide " + std::to_string(n));
    const long d = n / e;
    // x1-polynomial part of f^(1/e): with f = x1^n (1 + sum u_j y^j), y = 1/x1,
    // s = (1 + ...)^(1/e) satisfies k s_k = sum_j ((1/e + 1) j - k) u_j s_{k-j}.
    auto u = [&](long j) { return j <= n ? c[static_cast<std::size_t>(n - j)] : MultiPoly(kPlane); };
    const Rat a = Rat(1) / Rat(e) + Rat(1);
    std::vector<MultiPoly> s{MultiPoly::constant(Rat(1), kPlane)};
    for (long k = 1; k <= d; ++k) {
        MultiPoly acc(kPlane);
        for (long j = 1; j <= k; ++j)
            acc += (a * Rat(j) - Rat(k)) * (u(j) * s[static_cast<std::size_t>(k - j)]);
        s.push_back(acc * (Rat(1) / Rat(k)));
    }
    const MultiPoly x1 = MultiPoly::variable("x1", kPlane);
    MultiPoly root(kPlane);
    for (long k = 0; k <= d; ++k)
        root += s[static_cast<std::size_t>(k)] * x1.pow(d - k);
    const MultiPoly diff = fp - root.pow(e);
    if (!diff.is_zero() && static_cast<long>(diff.degree_in("x1")) >= n - d)
        throw InternalError("approximate root failed the degree condition");
    return root;
}

std::vector<MultiPoly> approximate_roots_oracle(const MultiPoly &f, const SemigroupData &sg) {
    std::vector<MultiPoly> out;
    for (int i = 1; i <= sg.g; ++i)
        out.push_back(approximate_root(f, sg.e[static_cast<std::size_t>(i - 1)]));
    return out;
}

void GenSeqReport::check(bool cond, const std::string &what) {
    lines.push_back(std::string(cond ? "ok: " : "FAIL: ") + what);
    ok = ok && cond;
}

GenSeqReport verify_genseq(const GenSeq &gs, ContactProfile &profile, int samples, std::uint64_t seed) {
    GenSeqReport rep;
    const SemigroupData sg = profile.semigroup();
    const auto g = static_cast<std::size_t>(sg.g);
    // (a) values.
    std::vector<GenElement> gens;
    for (const auto &e : gs.elements)
        if (e.name != "f")
            gens.push_back(e);
    const std::size_t settled = gs.divisorial && gens.size() > g + 1 ? g + 1 : std::min(gens.size(), g + 1);
    for (std::size_t k = 0; k < settled; ++k) {
        auto v = branch_value(gens[k].poly, profile);
        rep.check(v && gens[k].value && *v == *gens[k].value && *v == sg.beta_bar[k],
                  "nu_C(" + gens[k].name + ") = beta_bar_" + std::to_string(k) + " = " +
                      std::to_string(sg.beta_bar[k]));
    }
    if (gs.divisorial && gens.size() > g + 1) {
        const long ve = nu_E(gens.back().poly, profile, gs.p);
        rep.check(ve == gs.p, "nu_E(" + gens.back().name + ") = p = " + std::to_string(gs.p));
    }
    // (b) mu-history and l-history.
    for (std::size_t i = 2; i <= g && i - 2 < gs.mu_settled.size(); ++i) {
        const long expect = sg.e[i - 1] * sg.beta_bar[i] - 1;
        rep.check(gs.mu_settled[i - 2] == expect, "mu_" + std::to_string(i) + " = " +
                                                      std::to_string(gs.mu_settled[i - 2]) + " = e_" +
                                                      std::to_string(i - 1) + "*beta_bar_" + std::to_string(i) + " - 1");
    }
    if (g >= 2) {
        rep.check(gs.mu_settled.size() == g - 1, "one settlement step per generator x2..x" + std::to_string(g));
        bool match = gs.l_history.size() == g;
        for (std::size_t i = 0; match && i < g; ++i)
            match = gs.l_history[i] == sg.e[i + 1];
        rep.check(match, "l-history equals (e_1, ..., e_g)");
    }
    // (c) every sampled initial form is a constant times a normal-form monomial.
    if (!gs.divisorial) {
        std::vector<GenElement> basis(gens.begin(), gens.begin() + static_cast<long>(settled));
        std::vector<long> w;
        for (const auto &b : basis)
            w.push_back(*b.value);
        const auto caps = element_caps(sg, basis.size());
        std::mt19937_64 rng(seed);
        auto coeff = [&] { return Rat(static_cast<long>(rng() % 7) - 3); };
        int passed = 0, tried = 0;
        for (int s = 0; s < samples; ++s) {
            MultiPoly h(kPlane);
            for (int t = 0; t < 3; ++t) {
                std::vector<long> a(basis.size(), 0);
                for (std::size_t k = 0; k < a.size(); ++k)
                    a[k] = static_cast<long>(rng() % (k == 0 ? 4 : 2));
                h += expand_generators(generator_monomial(basis, a, coeff()), basis);
            }
            h += MultiPoly::monomial(kPlane, {static_cast<std::uint32_t>(rng() % 6), static_cast<std::uint32_t>(rng() % 4)},
                                     coeff());
            if (h.is_zero() || h.constant_term() != 0)
                continue;
            auto v = branch_value(h, profile);
            if (!v)
                continue;
            ++tried;
            const auto monos = normal_monomials(w, caps, *v);
            if (monos.size() != 1)
                continue;
            const MultiPoly M = expand_generators(generator_monomial(basis, monos[0], Rat(1)), basis);
            const Rat c = branch_lead(h, profile, *v) / branch_lead(M, profile, *v);
            const MultiPoly rest = h - c * M;
            auto rv = rest.is_zero() ? std::nullopt : branch_value(rest, profile);
            if (rest.is_zero() || !rv || *rv > *v)
                ++passed;
        }
        rep.check(tried > 0 && passed == tried, "initial forms of " + std::to_string(tried) +
                                                    " sampled polynomials are monomials in the generators (" +
                                                    std::to_string(passed) + " passed)");
    }
    // (d) approximate roots.
    MultiPoly f = profile.curve().with_variables(kPlane);
    const auto cf = f.coefficients_in("x1");
    if (!cf.empty() && cf.back().is_constant() && static_cast<long>(cf.size()) - 1 == sg.beta_bar[0]) {
        f *= Rat(1) / cf.back().constant_term();
        const auto roots = approximate_roots_oracle(f, sg);
        for (std::size_t i = 1; i <= roots.size(); ++i) {
            auto v = branch_value(roots[i - 1], profile);
            const bool gen_ok = i >= settled || (gens[i].value && v && *gens[i].value == *v);
            rep.check(v && *v == sg.beta_bar[i] && gen_ok,
                      "approximate root of degree " + std::to_string(sg.beta_bar[0] / sg.e[i - 1]) + " has value " +
                          (v ? std::to_string(*v) : "infinite") + " = beta_bar_" + std::to_string(i));
        }
    } else {
        rep.lines.push_back("skipped: approximate roots need a curve monic in x1 of degree beta_bar_0");
    }
    return rep;
}

} // namespace valjet
