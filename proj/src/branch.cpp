#include "valjet/branch.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace valjet {

namespace {

const std::vector<std::string> kPlane{"x0", "x1"};

// Exponents (a, b) of x0^a x1^b for every term of f; f may only use x0, x1.
std::vector<std::tuple<std::uint32_t, std::uint32_t, Rat>> plane_terms(const MultiPoly &f) {
    const MultiPoly g = f.compact();
    for (const auto &v : g.variables())
        if (v != "x0" && v != "x1")
            throw AlgebraError("unexpected variable \"" + v + "\" (expected x0, x1)");
    auto i0 = g.index_of("x0");
    auto i1 = g.index_of("x1");
    std::vector<std::tuple<std::uint32_t, std::uint32_t, Rat>> out;
    for (const auto &[e, c] : g.terms())
        out.emplace_back(i0 ? e[*i0] : 0u, i1 ? e[*i1] : 0u, c);
    return out;
}

// Horner evaluation of sum g[j] z^j.
Rat eval_univariate(const std::vector<Rat> &g, const Rat &z) {
    Rat acc(0);
    for (auto it = g.rbegin(); it != g.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

// a * (z^s - C)^r as dense coefficients of degree s*r.
std::vector<Rat> binomial_power(const Rat &a, int s, const Rat &C, int r) {
    std::vector<Rat> out(static_cast<std::size_t>(s * r + 1), Rat(0));
    mpz_class binom = 1;
    for (int i = 0; i <= r; ++i) {
        // coefficient of z^(s*i): a * binom(r,i) * (-C)^(r-i)
        Rat term = a * Rat(binom);
        for (int k = 0; k < r - i; ++k)
            term *= -C;
        out[static_cast<std::size_t>(s * i)] = term;
        binom = binom * (r - i) / (i + 1);
    }
    return out;
}

long binom_coeff(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

void trim(std::vector<Rat> &v) {
    while (!v.empty() && v.back() == 0)
        v.pop_back();
}

} // namespace

Rat BranchParam::coefficient(int k) const {
    for (const auto &[kk, c] : x1_terms)
        if (kk == k)
            return c;
    return Rat(0);
}

int multiplicity(const MultiPoly &f) {
    if (f.is_zero())
        throw AlgebraError("zero polynomial has no multiplicity");
    return static_cast<int>(f.order());
}

// ---- coordinate normalization ---------------------------------------------

namespace {

// If the binary form L (degree n in x0, x1) equals a*(x1 - lambda*x0)^n,
// returns lambda.
std::optional<Rat> tangent_slope(const MultiPoly &L, int n) {
    const MultiPoly x0 = MultiPoly::variable("x0", kPlane);
    const MultiPoly x1 = MultiPoly::variable("x1", kPlane);
    const MultiPoly Lp = L.with_variables(kPlane);
    const Rat a = Lp.coefficient({0u, static_cast<std::uint32_t>(n)});
    if (a == 0)
        return std::nullopt;
    const Rat b = Lp.coefficient({1u, static_cast<std::uint32_t>(n - 1)});
    const Rat lambda = -b / (Rat(n) * a);
    if (Lp == a * (x1 - lambda * x0).pow(n))
        return lambda;
    return std::nullopt;
}

MultiPoly swap_plane(const MultiPoly &f) {
    return f.substitute({{"x0", MultiPoly::variable("x1", kPlane)}, {"x1", MultiPoly::variable("x0", kPlane)}})
        .with_variables(kPlane);
}

MultiPoly shift_x1(const MultiPoly &f, const Rat &lambda) {
    const MultiPoly x0 = MultiPoly::variable("x0", kPlane);
    const MultiPoly x1 = MultiPoly::variable("x1", kPlane);
    return f.substitute({{"x1", x1 + lambda * x0}}).with_variables(kPlane);
}

void require_singular_point(const MultiPoly &f) {
    if (f.is_zero())
        throw AlgebraError("zero polynomial");
    plane_terms(f);
    if (f.constant_term() != 0)
        throw AlgebraError("curve does not pass through the origin");
}

} // namespace

CoordinateChange normalize_coordinates(const MultiPoly &f) {
    require_singular_point(f);
    const MultiPoly fp = f.with_variables(kPlane);
    const int n = multiplicity(fp);
    const MultiPoly L = fp.homogeneous_part(static_cast<std::uint32_t>(n));
    CoordinateChange out;
    if (auto lambda = tangent_slope(L, n)) {
        out.lambda = *lambda;
        out.result = *lambda == 0 ? fp : shift_x1(fp, *lambda);
        out.description = *lambda == 0 ? "identity" : "x1 <- x1 + " + to_string(*lambda) + "*x0";
        return out;
    }
    const MultiPoly swapped = swap_plane(fp);
    if (auto lambda = tangent_slope(swapped.homogeneous_part(static_cast<std::uint32_t>(n)), n)) {
        out.swapped = true;
        out.lambda = *lambda;
        out.result = *lambda == 0 ? swapped : shift_x1(swapped, *lambda);
        out.description = "swap x0 <-> x1";
        if (*lambda != 0)
            out.description += ", then x1 <- x1 + " + to_string(*lambda) + "*x0";
        return out;
    }
    throw AlgebraError("irrational tangent");
}

// ---- Newton-Puiseux ----------------------------------------------------------

namespace {

// One attempt with tau-window `window`; nullopt when the window is exhausted.
std::optional<BranchParam> puiseux_attempt(const MultiPoly &f, int n, int truncation, int window) {
    const auto terms = plane_terms(f);
    std::uint32_t deg = 0;
    for (const auto &[a, b, c] : terms)
        deg = std::max(deg, b);
    const std::size_t J = deg + 1;
    const std::size_t W = static_cast<std::size_t>(window);

    // G(tau, z) = F(tau, tau*z) with F(tau, y) = f(tau^n, y).
    std::vector<std::vector<Rat>> G(J, std::vector<Rat>(W, Rat(0)));
    for (const auto &[a, b, c] : terms) {
        const std::size_t pos = static_cast<std::size_t>(n) * a + b;
        if (pos < W)
            G[b][pos] += c;
    }

    BranchParam out;
    out.n = n;
    out.truncation = truncation;
    out.curve = f.with_variables(kPlane);
    long e = n;
    std::size_t len = W;
    for (int k = 1; k <= truncation; ++k) {
        std::size_t d = len;
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t a = 0; a < std::min(d, len); ++a)
                if (G[j][a] != 0) {
                    d = a;
                    break;
                }
        if (d >= len)
            return std::nullopt;
        std::vector<Rat> g(J);
        for (std::size_t j = 0; j < J; ++j)
            g[j] = G[j][d];
        trim(g);
        std::size_t jl = 0;
        while (g[jl] == 0)
            ++jl;
        const long jh = static_cast<long>(g.size()) - 1;
        if (jh != e)
            throw AlgebraError("reducible input");

        Rat c(0);
        if (jl > 0) {
            if (static_cast<long>(jl) != jh)
                throw AlgebraError("reducible input");
        } else {
            // All roots share one absolute value: g = a*(z^s - C)^r.
            long s = 0;
            for (std::size_t j = 1; j < g.size(); ++j)
                if (g[j] != 0)
                    s = std::gcd(s, static_cast<long>(j));
            const long r = jh / s;
            const Rat lead = g.back();
            const Rat C = -g[static_cast<std::size_t>(s * (r - 1))] / (Rat(r) * lead);
            if (g != binomial_power(lead, static_cast<int>(s), C, static_cast<int>(r)))
                throw AlgebraError("reducible input");
            if (r != std::gcd(e, static_cast<long>(k)))
                throw AlgebraError("reducible input");
            std::optional<Rat> root;
            if (s % 2 == 1) {
                auto abs_root = rational_root(abs(C), static_cast<unsigned>(s));
                if (abs_root)
                    root = sgn(C) < 0 ? Rat(-*abs_root) : *abs_root;
            } else if (sgn(C) > 0) {
                root = rational_root(C, static_cast<unsigned>(s));
            }
            if (!root || eval_univariate(g, *root) != 0)
                throw AlgebraError("irrational coefficient required");
            c = *root;
            out.x1_terms.emplace_back(k, c);
            e = std::gcd(e, static_cast<long>(k));
        }

        // G <- G(tau, c + tau*z) / tau^d.
        const std::size_t nlen = len - d;
        std::vector<std::vector<Rat>> H(J, std::vector<Rat>(nlen, Rat(0)));
        std::vector<Rat> cpow(J, Rat(1));
        for (std::size_t i = 1; i < J; ++i)
            cpow[i] = cpow[i - 1] * c;
        for (std::size_t i = 0; i < J; ++i)
            for (std::size_t j = i; j < J; ++j) {
                if (c == 0 && j != i)
                    continue;
                const Rat factor = Rat(binom_coeff(static_cast<long>(j), static_cast<long>(i))) * cpow[j - i];
                for (std::size_t a = i; a < nlen; ++a) {
                    const std::size_t src = a - i + d;
                    if (src < len && G[j][src] != 0)
                        H[i][a] += factor * G[j][src];
                }
            }
        G = std::move(H);
        len = nlen;
    }
    return out;
}

} // namespace

BranchParam newton_puiseux(const MultiPoly &f, int truncation) {
    require_singular_point(f);
    if (truncation < 1)
        throw AlgebraError("truncation must be positive");
    const MultiPoly fp = f.with_variables(kPlane);
    const int n = multiplicity(fp);
    const MultiPoly L = fp.homogeneous_part(static_cast<std::uint32_t>(n));
    auto lambda = tangent_slope(L, n);
    if (!lambda) {
        if (tangent_slope(swap_plane(fp).homogeneous_part(static_cast<std::uint32_t>(n)), n))
            throw AlgebraError("coordinates not normalized: swap x0 <-> x1");
        throw AlgebraError("reducible input");
    }
    if (*lambda != 0)
        throw AlgebraError("coordinates not normalized: substitute x1 <- x1 + " + to_string(*lambda) + "*x0");
    for (int window = 2 * truncation + 4 * n + 8;; window *= 2) {
        if (auto p = puiseux_attempt(fp, n, truncation, window))
            return *p;
        if (window > 64 * (truncation + 64) * n)
            throw AlgebraError("reducible input");
    }
}

BranchParam extend_param(const BranchParam &param, int truncation) {
    if (truncation <= param.truncation)
        return param;
    if (param.closed_form) {
        BranchParam out = param;
        out.truncation = truncation;
        return out;
    }
    if (param.curve)
        return newton_puiseux(*param.curve, truncation);
    throw AlgebraError("increase truncation");
}

// ---- semigroup ----------------------------------------------------------------

long SemigroupData::conductor() const {
    long c = 1 - beta_bar[0];
    for (int i = 1; i <= g; ++i)
        c += (n_seq[static_cast<std::size_t>(i - 1)] - 1) * beta_bar[static_cast<std::size_t>(i)];
    return c;
}

bool SemigroupData::contains(long value) const {
    if (value < 0)
        return false;
    if (value >= conductor())
        return true;
    std::vector<char> reach(static_cast<std::size_t>(value + 1), 0);
    reach[0] = 1;
    for (long v = 1; v <= value; ++v)
        for (long b : beta_bar)
            if (b <= v && reach[static_cast<std::size_t>(v - b)]) {
                reach[static_cast<std::size_t>(v)] = 1;
                break;
            }
    return reach[static_cast<std::size_t>(value)] != 0;
}

SemigroupData semigroup(const BranchParam &param) {
    if (param.n < 1)
        throw AlgebraError("branch multiplicity must be positive");
    SemigroupData sg;
    long e = param.n;
    sg.beta = {param.n};
    sg.e = {e};
    for (const auto &[k, c] : param.x1_terms) {
        if (e == 1)
            break;
        if (k <= param.n)
            throw AlgebraError("coordinates not normalized: x1 must be tangent");
        if (k > param.truncation)
            break;
        const long ne = std::gcd(e, static_cast<long>(k));
        if (ne < e) {
            sg.beta.push_back(k);
            sg.e.push_back(ne);
            e = ne;
        }
    }
    if (e != 1)
        throw AlgebraError("truncation too small");
    sg.g = static_cast<int>(sg.beta.size()) - 1;
    sg.beta_bar = {param.n};
    for (int i = 1; i <= sg.g; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        sg.n_seq.push_back(sg.e[ui - 1] / sg.e[ui]);
        sg.m_seq.push_back(sg.beta[ui] / sg.e[ui]);
        if (i == 1)
            sg.beta_bar.push_back(sg.beta[1]);
        else
            sg.beta_bar.push_back(sg.n_seq[ui - 2] * sg.beta_bar[ui - 1] + sg.beta[ui] - sg.beta[ui - 1]);
    }
    for (int i = 1; i <= sg.g; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        long r = sg.n_seq[ui - 1] * sg.beta_bar[ui];
        std::vector<long> row(ui, 0);
        for (std::size_t j = ui - 1; j >= 1; --j) {
            long b = 0;
            while (b < sg.n_seq[j - 1] && (r - b * sg.beta_bar[j]) % sg.e[j - 1] != 0)
                ++b;
            if (b == sg.n_seq[j - 1])
                throw InternalError("semigroup normal form failed");
            row[j] = b;
            r -= b * sg.beta_bar[j];
        }
        if (r < 0 || r % sg.beta_bar[0] != 0)
            throw InternalError("semigroup normal form failed");
        row[0] = r / sg.beta_bar[0];
        sg.b.push_back(row);
        if (i < sg.g && sg.n_seq[ui - 1] * sg.beta_bar[ui] >= sg.beta_bar[ui + 1])
            throw InternalError("semigroup generators not increasing");
    }
    return sg;
}

// ---- defining polynomial ---------------------------------------------------

MultiPoly defining_polynomial(const BranchParam &param) {
    // Characteristic polynomial (in x1) of multiplication by X(tau) on
    // Q[x0][tau]/(tau^n - x0), via Faddeev-LeVerrier.
    const int n = param.n;
    const auto un = static_cast<std::size_t>(n);
    const std::vector<std::string> vx0{"x0"};
    using Matrix = std::vector<std::vector<MultiPoly>>;
    auto zero = [&] { return Matrix(un, std::vector<MultiPoly>(un, MultiPoly(vx0))); };
    Matrix A = zero();
    for (const auto &[k, c] : param.x1_terms) {
        if (k > param.truncation)
            break;
        for (int j = 0; j < n; ++j) {
            const int s = k + j;
            A[static_cast<std::size_t>(s % n)][static_cast<std::size_t>(j)] +=
                MultiPoly::monomial(vx0, {static_cast<std::uint32_t>(s / n)}, c);
        }
    }
    auto mul = [&](const Matrix &X, const Matrix &Y) {
        Matrix Z = zero();
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t k = 0; k < un; ++k) {
                if (X[i][k].is_zero())
                    continue;
                for (std::size_t j = 0; j < un; ++j)
                    if (!Y[k][j].is_zero())
                        Z[i][j] += X[i][k] * Y[k][j];
            }
        return Z;
    };
    std::vector<MultiPoly> coeff(un + 1, MultiPoly(vx0));
    coeff[un] = MultiPoly::constant(Rat(1), vx0);
    Matrix M = zero();
    for (int k = 1; k <= n; ++k) {
        M = mul(A, M);
        for (std::size_t i = 0; i < un; ++i)
            M[i][i] += coeff[static_cast<std::size_t>(n - k + 1)];
        const Matrix AM = mul(A, M);
        MultiPoly tr(vx0);
        for (std::size_t i = 0; i < un; ++i)
            tr += AM[i][i];
        coeff[static_cast<std::size_t>(n - k)] = tr * Rat(-1, k);
    }
    const MultiPoly x1 = MultiPoly::variable("x1", kPlane);
    MultiPoly f(kPlane);
    for (std::size_t k = 0; k <= un; ++k)
        f += coeff[k].with_variables(kPlane) * x1.pow(static_cast<long>(k));
    return f;
}

MultiPoly branch_curve(const BranchParam &param) {
    return param.curve ? *param.curve : defining_polynomial(param);
}

// ---- contact series -----------------------------------------------------------

ContactSeries::ContactSeries(int level, int tail)
    : tail_(tail), coeffs_(static_cast<std::size_t>(std::max(level, 0) + 1)) {
    if (level < 0)
        throw AlgebraError("negative truncation level");
}

int ContactSeries::order() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (!coeffs_[k].empty())
            return static_cast<int>(k);
    return -1;
}

MultiPoly ContactSeries::coefficient(int k) const {
    const std::vector<std::string> vars{"u1", "w0"};
    MultiPoly out(vars);
    const auto &c = (*this)[k];
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] == 0)
            continue;
        const long u = k - static_cast<long>(tail_) * static_cast<long>(j);
        if (u < 0)
            throw InternalError("contact series lost weighted homogeneity");
        out.add_term({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(j)}, c[j]);
    }
    return out;
}

ContactSeries &ContactSeries::operator+=(const ContactSeries &o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        auto &a = coeffs_[k];
        const auto &b = o.coeffs_[k];
        if (a.size() < b.size())
            a.resize(b.size(), Rat(0));
        for (std::size_t j = 0; j < b.size(); ++j)
            a[j] += b[j];
        trim(a);
    }
    return *this;
}

ContactSeries &ContactSeries::operator-=(const ContactSeries &o) {
    *this += o.scaled(Rat(-1));
    return *this;
}

ContactSeries ContactSeries::scaled(const Rat &c) const {
    ContactSeries out = *this;
    for (auto &v : out.coeffs_) {
        for (auto &x : v)
            x *= c;
        trim(v);
    }
    return out;
}

ContactSeries operator*(const ContactSeries &a, const ContactSeries &b) {
    const int m = std::min(a.level(), b.level());
    ContactSeries out(m, std::max(a.tail_, b.tail_));
    const int oa = a.order(), ob = b.order();
    if (oa < 0 || ob < 0)
        return out;
    for (int i = oa; i + ob <= m; ++i) {
        const auto &ai = a.coeffs_[static_cast<std::size_t>(i)];
        if (ai.empty())
            continue;
        for (int j = ob; i + j <= m; ++j) {
            const auto &bj = b.coeffs_[static_cast<std::size_t>(j)];
            if (bj.empty())
                continue;
            auto &dst = out.coeffs_[static_cast<std::size_t>(i + j)];
            if (dst.size() < ai.size() + bj.size() - 1)
                dst.resize(ai.size() + bj.size() - 1, Rat(0));
            for (std::size_t p = 0; p < ai.size(); ++p) {
                if (ai[p] == 0)
                    continue;
                for (std::size_t q = 0; q < bj.size(); ++q)
                    dst[p + q] += ai[p] * bj[q];
            }
        }
    }
    for (auto &v : out.coeffs_)
        trim(v);
    return out;
}

std::pair<ContactSeries, ContactSeries> contact_arc(const BranchParam &param, int level, int tail) {
    if (level > param.truncation)
        throw AlgebraError("increase truncation: level " + std::to_string(level) + " exceeds " +
                           std::to_string(param.truncation));
    const int K = tail > 0 && tail <= level ? tail : 0;
    ContactSeries x0(level, K), x1(level, K);
    if (param.n <= level)
        x0[param.n] = {Rat(1)};
    for (const auto &[k, c] : param.x1_terms)
        if (k <= level)
            x1[k] = {c};
    if (K > 0) {
        auto &slot = x1[K];
        slot.resize(2, Rat(0));
        slot[1] += Rat(1);
        trim(slot);
    }
    return {x0, x1};
}

ContactSeries compose_contact(const MultiPoly &h, const std::pair<ContactSeries, ContactSeries> &arc) {
    const auto terms = plane_terms(h);
    const int level = arc.first.level();
    const int n = arc.first.order();
    if (n <= 0 && level > 0 && arc.first.level() >= 1)
        throw InternalError("x0 must vanish to positive order");
    std::uint32_t deg = 0;
    for (const auto &[a, b, c] : terms)
        deg = std::max(deg, b);
    // Group by x1-degree: h = sum_b P_b(x0) x1^b, and x0 = t^n exactly.
    std::vector<std::vector<std::pair<std::uint32_t, Rat>>> by_b(deg + 1);
    for (const auto &[a, b, c] : terms)
        by_b[b].emplace_back(a, c);
    ContactSeries out(level, arc.second.tail());
    ContactSeries power(level, arc.second.tail());
    power[0] = {Rat(1)};
    for (std::uint32_t b = 0; b <= deg; ++b) {
        if (b > 0)
            power = power * arc.second;
        for (const auto &[a, c] : by_b[b]) {
            const long shift = static_cast<long>(a) * n;
            if (shift > level)
                continue;
            for (int k = 0; k + shift <= level; ++k) {
                const auto &src = power[k];
                if (src.empty())
                    continue;
                auto &dst = out[static_cast<int>(k + shift)];
                if (dst.size() < src.size())
                    dst.resize(src.size(), Rat(0));
                for (std::size_t j = 0; j < src.size(); ++j)
                    dst[j] += c * src[j];
            }
        }
    }
    for (int k = 0; k <= level; ++k)
        trim(out[k]);
    return out;
}

std::optional<int> contact_order(const MultiPoly &h, const BranchParam &param, int level, int tail) {
    const int o = compose_contact(h, contact_arc(param, level, tail)).order();
    if (o < 0)
        return std::nullopt;
    return o;
}

// ---- symbolic generic jet ---------------------------------------------------

GenericJet generic_jet(const BranchParam &param, int m, JetModel model, int tail) {
    if (m < 0)
        throw AlgebraError("negative jet level");
    if (m > param.truncation)
        throw AlgebraError("jet level " + std::to_string(m) + " exceeds truncation " +
                           std::to_string(param.truncation));
    GenericJet jet;
    jet.source = param;
    jet.level = m;
    jet.tail = tail > 0 && tail <= m ? tail : 0;
    jet.model = model;
    if (model == JetModel::reduced) {
        jet.params = {"u1", "w0"};
        const auto arc = contact_arc(param, m, jet.tail);
        for (const auto &[name, s] : {std::pair{"x0", &arc.first}, std::pair{"x1", &arc.second}}) {
            TruncSeries ts(m);
            for (int k = 0; k <= m; ++k)
                ts[k] = s->coefficient(k).with_variables(jet.params);
            jet.coords[name] = ts;
        }
        return jet;
    }
    for (int i = 1; i <= m; ++i)
        jet.params.push_back("u" + std::to_string(i));
    if (jet.tail > 0)
        for (int j = 0; j + jet.tail <= m; ++j)
            jet.params.push_back("w" + std::to_string(j));
    TruncSeries tau(m);
    for (int k = 0; k <= m; ++k)
        tau[k] = MultiPoly(jet.params);
    for (int i = 1; i <= m; ++i)
        tau[i] = MultiPoly::variable("u" + std::to_string(i), jet.params);
    TruncSeries one(m);
    one[0] = MultiPoly::constant(Rat(1), jet.params);
    for (int k = 1; k <= m; ++k)
        one[k] = MultiPoly(jet.params);
    std::vector<TruncSeries> powers{one};
    int maxk = param.n;
    for (const auto &[k, c] : param.x1_terms)
        if (k <= m)
            maxk = std::max(maxk, k);
    for (int k = 1; k <= std::min(maxk, m); ++k)
        powers.push_back(powers.back() * tau);
    TruncSeries zero(m);
    for (int k = 0; k <= m; ++k)
        zero[k] = MultiPoly(jet.params);
    auto power = [&](int k) { return k <= m ? powers[static_cast<std::size_t>(k)] : zero; };
    TruncSeries x0 = power(param.n);
    TruncSeries x1 = zero;
    for (const auto &[k, c] : param.x1_terms)
        if (k <= m)
            x1 += power(k).scaled(MultiPoly::constant(c, jet.params));
    if (jet.tail > 0)
        for (int j = 0; j + jet.tail <= m; ++j)
            x1[jet.tail + j] += MultiPoly::variable("w" + std::to_string(j), jet.params);
    jet.coords["x0"] = x0;
    jet.coords["x1"] = x1;
    return jet;
}

void register_coordinate(GenericJet &jet, const std::string &name, const MultiPoly &p) {
    TruncSeries s = series_compose(p, jet.coords, jet.level);
    for (int k = 0; k <= s.level(); ++k)
        s[k] = s[k].with_variables(jet.params);
    jet.coords[name] = s;
}

MultiPoly evaluate_at_jet(const MultiPoly &p, const GenericJet &jet) {
    std::map<std::string, MultiPoly> subs;
    for (const auto &v : p.variables()) {
        auto split = split_jet_name(v);
        if (!split)
            throw AlgebraError("not a jet variable: \"" + v + "\"");
        auto it = jet.coords.find(split->first);
        if (it == jet.coords.end())
            throw AlgebraError("unregistered coordinate \"" + split->first + "\"");
        if (split->second > jet.level)
            throw AlgebraError("jet variable " + v + " above level " + std::to_string(jet.level));
        subs[v] = it->second[split->second];
    }
    return p.substitute(subs).with_variables(jet.params).compact();
}

// ---- word-size specializations ----------------------------------------------

namespace {

using ModSeries = std::vector<std::uint64_t>;

ModSeries mod_mul(const ModSeries &a, const ModSeries &b, const PrimeField &F) {
    const std::size_t m = std::min(a.size(), b.size());
    ModSeries out(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < m; ++j)
            if (b[j] != 0)
                out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
    return out;
}

} // namespace

std::optional<JetSample> sample_jet(const BranchParam &param, int m, int tail, const PrimeField &field,
                                    std::uint64_t seed) {
    if (m > param.truncation)
        throw AlgebraError("jet level " + std::to_string(m) + " exceeds truncation " +
                           std::to_string(param.truncation));
    std::mt19937_64 rng(seed);
    const std::uint64_t p = field.modulus();
    auto draw = [&] { return rng() % p; };
    const auto len = static_cast<std::size_t>(m + 1);
    JetSample s{field, m, {}};
    ModSeries tau(len, 0);
    for (std::size_t i = 1; i < len; ++i)
        tau[i] = draw();
    if (len > 1)
        while (tau[1] == 0)
            tau[1] = draw();
    ModSeries power(len, 0);
    power[0] = 1;
    ModSeries x0(len, 0), x1(len, 0);
    int k = 0;
    std::size_t next = 0;
    const int top = std::max(param.n, param.x1_terms.empty() ? 0 : param.x1_terms.back().first);
    while (k < std::min(top, m)) {
        power = mod_mul(power, tau, field);
        ++k;
        if (k == param.n)
            x0 = power;
        while (next < param.x1_terms.size() && param.x1_terms[next].first < k)
            ++next;
        if (next < param.x1_terms.size() && param.x1_terms[next].first == k) {
            auto c = field.reduce(param.x1_terms[next].second);
            if (!c)
                return std::nullopt;
            for (std::size_t i = 0; i < len; ++i)
                x1[i] = field.add(x1[i], field.mul(*c, power[i]));
        }
    }
    if (tail > 0)
        for (int j = tail; j <= m; ++j)
            x1[static_cast<std::size_t>(j)] = field.add(x1[static_cast<std::size_t>(j)], draw());
    s.coords["x0"] = x0;
    s.coords["x1"] = x1;
    return s;
}

std::vector<std::uint64_t> compose_sample(const MultiPoly &h, const JetSample &sample) {
    const PrimeField &F = sample.field;
    const auto len = static_cast<std::size_t>(sample.level + 1);
    const MultiPoly hc = h.compact();
    std::vector<std::vector<ModSeries>> powers;
    for (const auto &v : hc.variables()) {
        auto it = sample.coords.find(v);
        if (it == sample.coords.end())
            throw AlgebraError("no substitute for variable " + v);
        ModSeries one(len, 0);
        one[0] = 1;
        std::vector<ModSeries> pw{one};
        for (std::uint32_t k = 1; k <= hc.degree_in(v); ++k)
            pw.push_back(mod_mul(pw.back(), it->second, F));
        powers.push_back(std::move(pw));
    }
    ModSeries out(len, 0);
    for (const auto &[e, c] : hc.terms()) {
        auto cm = F.reduce(c);
        if (!cm)
            throw AlgebraError("coefficient does not reduce modulo the sampling prime");
        ModSeries term(len, 0);
        term[0] = *cm;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                term = mod_mul(term, powers[i][e[i]], F);
        for (std::size_t i = 0; i < len; ++i)
            out[i] = F.add(out[i], term[i]);
    }
    return out;
}

void register_coordinate(JetSample &sample, const std::string &name, const MultiPoly &p) {
    sample.coords[name] = compose_sample(p, sample);
}

std::optional<std::uint64_t> evaluate_at_sample(const MultiPoly &p, const JetSample &sample) {
    std::vector<std::uint64_t> values;
    for (const auto &v : p.variables()) {
        auto split = split_jet_name(v);
        if (!split)
            throw AlgebraError("not a jet variable: \"" + v + "\"");
        auto it = sample.coords.find(split->first);
        if (it == sample.coords.end())
            throw AlgebraError("unregistered coordinate \"" + split->first + "\"");
        if (split->second > sample.level)
            throw AlgebraError("jet variable " + v + " above level " + std::to_string(sample.level));
        values.push_back(it->second[static_cast<std::size_t>(split->second)]);
    }
    return evaluate_mod(p, values, sample.field);
}

} // namespace valjet
