#include "valjet/valuation.hpp"

#include <algorithm>
#include <numeric>

namespace valjet {

namespace {

const std::vector<std::string> kPlane{"x0", "x1"};

MultiPoly plane(const MultiPoly &h) {
    const MultiPoly c = h.compact();
    for (const auto &v : c.variables())
        if (v != "x0" && v != "x1")
            throw AlgebraError("unexpected variable \"" + v + "\" (expected x0, x1)");
    return h.with_variables(kPlane);
}

// Weight of x1 along the branch: the order of x1(tau).
long x1_weight(const BranchParam &p) {
    return p.x1_terms.empty() ? p.truncation + 1 : p.x1_terms.front().first;
}

// Order of h on the pure arc through t^level, or nullopt above it.
std::optional<long> arc_order(const MultiPoly &h, ContactProfile &profile, int level) {
    profile.reserve(level);
    auto o = contact_order(h, profile.param(), level, 0);
    if (!o)
        return std::nullopt;
    return *o;
}

std::optional<long> value_with_levels(const MultiPoly &hp, ContactProfile &profile) {
    if (hp.constant_term() != 0)
        return 0;
    const BranchParam &p = profile.param();
    const std::vector<long> w{p.n, x1_weight(p)};
    const long l0 = hp.weighted_order(w);
    const int mf = multiplicity(profile.curve());
    const int mh = multiplicity(hp);
    const long start = std::max({kappa_bound(l0, mf, mh), l0, 1L});
    // Bezout: the local intersection number is at most deg f * deg h unless
    // the branch is a component of h = 0.
    const long bezout = static_cast<long>(profile.curve().total_degree()) * hp.total_degree() + 1;
    std::vector<long> levels{start, 2 * start};
    if (bezout > 2 * start)
        levels.push_back(bezout);
    for (long L : levels)
        if (auto v = arc_order(hp, profile, static_cast<int>(L)))
            return v;
    return std::nullopt;
}

} // namespace

long kappa_bound(long l, int mult_f, int mult_h) {
    if (mult_h < 1)
        throw AlgebraError("kappa bound needs mult(h) >= 1");
    return l * mult_f / mult_h;
}

long kappa_bound(long l, const MultiPoly &f, const MultiPoly &h) {
    return kappa_bound(l, multiplicity(f), multiplicity(h));
}

std::optional<long> branch_value(const MultiPoly &h, ContactProfile &profile) {
    if (h.is_zero())
        throw AlgebraError("zero polynomial has no value");
    return value_with_levels(plane(h), profile);
}

ValuationResult nu_C(const MultiPoly &h, ContactProfile &profile) {
    if (h.is_zero())
        throw AlgebraError("zero polynomial has no value");
    const MultiPoly hp = plane(h);
    ValuationResult r;
    r.value = value_with_levels(hp, profile);
    if (!r.value)
        return r;
    const long v = *r.value;
    if (v == 0) {
        r.witness = MultiPoly::constant(hp.constant_term(), {"u1", "w0"});
        return r;
    }
    r.kappa = kappa_bound(v, multiplicity(profile.curve()), multiplicity(hp));
    // Certificate at the generic point of C_m, m >= kappa.
    for (long m = std::max(r.kappa, v); m <= 4 * std::max(r.kappa, v) + 64; ++m) {
        const int mi = static_cast<int>(m);
        const int K = profile.tail_for_level(mi);
        profile.reserve(mi);
        const ContactSeries s = compose_contact(hp, contact_arc(profile.param(), mi, K));
        if (s.order() == v) {
            r.level_used = mi;
            r.tail = K;
            r.witness = s.coefficient(static_cast<int>(v));
            return r;
        }
    }
    throw InternalError("no jet level certifies the value of " + render_poly(h));
}

ValuationResult nu_C(const MultiPoly &h, const BranchParam &param) {
    ContactProfile profile(param);
    return nu_C(h, profile);
}

// ---- Newton forms -------------------------------------------------------------

NewtonForm newton_form(const MultiPoly &h) {
    const MultiPoly hp = plane(h);
    if (hp.is_zero())
        throw AlgebraError("zero polynomial");
    if (hp.constant_term() != 0)
        throw AlgebraError("not in Newton form: nonzero constant term");
    NewtonForm nf;
    std::optional<long> a0, b0;
    for (const auto &[e, c] : hp.terms()) {
        if (e[1] == 0)
            a0 = a0 ? std::min(*a0, static_cast<long>(e[0])) : static_cast<long>(e[0]);
        if (e[0] == 0)
            b0 = b0 ? std::min(*b0, static_cast<long>(e[1])) : static_cast<long>(e[1]);
    }
    auto split = [&](long A, long B) {
        // Terms on the segment A*b + B*a = A*B and strictly above it.
        MultiPoly edge(kPlane);
        for (const auto &[e, c] : hp.terms()) {
            const long s = static_cast<long>(e[0]) * B + static_cast<long>(e[1]) * A;
            if (s < A * B)
                throw AlgebraError("not in Newton form: term below the leading edge");
            if (s == A * B)
                edge.add_term(e, c);
            else
                nf.above.emplace_back(e[0], e[1], c);
        }
        return edge;
    };
    const MultiPoly x0 = MultiPoly::variable("x0", kPlane);
    const MultiPoly x1 = MultiPoly::variable("x1", kPlane);
    if (a0 && b0) {
        nf.shape = NewtonForm::Shape::binomial;
        nf.delta = std::gcd(*a0, *b0);
        nf.n = *b0 / nf.delta;
        nf.m = *a0 / nf.delta;
        const MultiPoly edge = split(*a0, *b0);
        nf.scale = edge.coefficient({0u, static_cast<std::uint32_t>(*b0)});
        const Rat next = edge.coefficient({static_cast<std::uint32_t>(nf.m),
                                           static_cast<std::uint32_t>(nf.n * (nf.delta - 1))});
        nf.alpha = -next / (nf.scale * Rat(nf.delta));
        if (edge != nf.scale * (x1.pow(nf.n) - nf.alpha * x0.pow(nf.m)).pow(nf.delta))
            throw AlgebraError("not in Newton form: leading edge is not a binomial power");
    } else {
        // A pure power of one coordinate plus terms above it.
        const MultiPoly lowest = hp.homogeneous_part(hp.order());
        if (lowest.size() != 1)
            throw AlgebraError("not in Newton form");
        const auto [le, lc] = lowest.leading_term();
        if (le[0] != 0 && le[1] != 0)
            throw AlgebraError("not in Newton form: mixed leading monomial");
        nf.shape = le[1] == 0 ? NewtonForm::Shape::x0_power : NewtonForm::Shape::x1_power;
        nf.delta = static_cast<long>(le[0] + le[1]);
        nf.scale = lc;
        for (const auto &[te, tc] : hp.terms())
            if (te != le)
                nf.above.emplace_back(te[0], te[1], tc);
    }
    for (auto &[a, b, c] : nf.above)
        c /= nf.scale;
    return nf;
}

NewtonEstimate newton_estimate(const NewtonForm &h, const NewtonForm &f, const SemigroupData &sg) {
    if (sg.beta_bar.size() < 2)
        throw AlgebraError("Newton estimate inapplicable: smooth branch");
    const long b0 = sg.beta_bar[0], b1 = sg.beta_bar[1];
    const MultiPoly x0 = MultiPoly::variable("x0", kPlane);
    const MultiPoly x1 = MultiPoly::variable("x1", kPlane);
    NewtonEstimate est;
    if (h.shape == NewtonForm::Shape::x0_power) {
        est = {b0 * h.delta, InitialKind::monomial_x0, x0.pow(h.delta)};
        return est;
    }
    if (h.shape == NewtonForm::Shape::x1_power) {
        est = {b1 * h.delta, InitialKind::monomial_x1, x1.pow(h.delta)};
        return est;
    }
    if (f.shape != NewtonForm::Shape::binomial)
        throw AlgebraError("Newton estimate inapplicable: curve not in binomial Newton form");
    const long vx0 = b0 * h.m * h.delta, vx1 = b1 * h.n * h.delta;
    if (h.m != f.m || h.n != f.n) {
        if (vx0 < vx1)
            return {vx0, InitialKind::monomial_x0, x0.pow(h.m * h.delta)};
        return {vx1, InitialKind::monomial_x1, x1.pow(h.n * h.delta)};
    }
    if (h.alpha == f.alpha)
        throw AlgebraError("Newton estimate inapplicable");
    return {vx0, InitialKind::binomial_power, (x1.pow(h.n) - h.alpha * x0.pow(h.m)).pow(h.delta)};
}

// ---- initial forms ------------------------------------------------------------

InitialForm initial_form(const MultiPoly &h, ContactProfile &profile) {
    if (h.is_zero())
        throw AlgebraError("zero polynomial has no initial form");
    const MultiPoly hp = plane(h);
    const auto value = value_with_levels(hp, profile);
    if (!value)
        throw AlgebraError("h vanishes on branch");
    const long v = *value;
    const BranchParam &p = profile.param();
    const long w1 = x1_weight(p);

    struct Candidate {
        Exponent e;
        Rat c;
        std::vector<Rat> series;
    };
    std::vector<Candidate> cand;
    profile.reserve(static_cast<int>(v));
    const auto arc = contact_arc(profile.param(), static_cast<int>(v), 0);
    for (const auto &[e, c] : hp.terms()) {
        if (static_cast<long>(e[0]) * p.n + static_cast<long>(e[1]) * w1 > v)
            continue;
        const MultiPoly term = MultiPoly::monomial(kPlane, e, c);
        const ContactSeries s = compose_contact(term, arc);
        std::vector<Rat> dense(static_cast<std::size_t>(v + 1), Rat(0));
        for (int k = 0; k <= v; ++k)
            if (!s[k].empty())
                dense[static_cast<std::size_t>(k)] = s[k][0];
        cand.push_back({e, c, dense});
    }
    const std::size_t N = cand.size();
    // The complement of P within the candidates must vanish through t^v.
    auto complement_vanishes = [&](const std::vector<char> &in_p) {
        for (std::size_t k = 0; k <= static_cast<std::size_t>(v); ++k) {
            Rat sum(0);
            for (std::size_t i = 0; i < N; ++i)
                if (!in_p[i])
                    sum += cand[i].series[k];
            if (sum != 0)
                return false;
        }
        return true;
    };
    std::vector<char> chosen(N, 1);
    if (N <= 12) {
        bool found = false;
        for (std::size_t size = 1; size <= N && !found; ++size) {
            // Subsets of `size` indices in lexicographic order.
            std::vector<std::size_t> idx(size);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                std::vector<char> in_p(N, 0);
                for (auto i : idx)
                    in_p[i] = 1;
                if (complement_vanishes(in_p)) {
                    chosen = in_p;
                    found = true;
                    break;
                }
                std::size_t pos = size;
                while (pos > 0 && idx[pos - 1] == N - size + pos - 1)
                    --pos;
                if (pos == 0)
                    break;
                ++idx[pos - 1];
                for (std::size_t q = pos; q < size; ++q)
                    idx[q] = idx[q - 1] + 1;
            }
        }
    } else {
        for (std::size_t i = 0; i < N; ++i) {
            chosen[i] = 0;
            if (!complement_vanishes(chosen))
                chosen[i] = 1;
        }
    }
    InitialForm out{MultiPoly(kPlane), v};
    for (std::size_t i = 0; i < N; ++i)
        if (chosen[i])
            out.P.add_term(cand[i].e, cand[i].c);
    return out;
}

InitialForm initial_form(const MultiPoly &h, const BranchParam &param) {
    ContactProfile profile(param);
    return initial_form(h, profile);
}

// ---- divisorial valuations ----------------------------------------------------

long nu_E(const MultiPoly &h, ContactProfile &profile, long p) {
    if (h.is_zero())
        throw AlgebraError("zero polynomial has no value");
    const MultiPoly hp = plane(h);
    const SemigroupData &sg = profile.semigroup();
    if (sg.g < 1)
        throw AlgebraError("divisorial valuation needs a singular branch");
    const long threshold = sg.n_seq.back() * sg.beta_bar.back();
    if (p < threshold)
        throw AlgebraError("contact order p = " + std::to_string(p) + " is below n_g*beta_g = " +
                           std::to_string(threshold));
    const int K = profile.tail_for_level(static_cast<int>(p - 1));
    auto phi = profile.phi(K, static_cast<int>(p));
    if (!phi || *phi != p)
        throw InternalError("no arc family of contact " + std::to_string(p));
    for (long L = p; L <= 64 * (p + static_cast<long>(hp.total_degree()) * p); L *= 2) {
        profile.reserve(static_cast<int>(L));
        const int o = compose_contact(hp, contact_arc(profile.param(), static_cast<int>(L), K)).order();
        if (o >= 0)
            return o;
    }
    throw InternalError("divisorial value not found");
}

long nu_E(const MultiPoly &h, const BranchParam &param, long p) {
    ContactProfile profile(param);
    return nu_E(h, profile, p);
}

} // namespace valjet
