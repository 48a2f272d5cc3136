#include "valjet/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace valjet {

LinSolution lin_solve(const LinSystem &sys) {
    const std::size_t rows = sys.matrix.size();
    if (sys.rhs.size() != rows)
        throw AlgebraError("right-hand side length does not match row count");
    const std::size_t cols = rows ? sys.matrix[0].size() : 0;
    for (const auto &r : sys.matrix)
        if (r.size() != cols)
            throw AlgebraError("ragged matrix");

    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        std::copy(sys.matrix[i].begin(), sys.matrix[i].end(), a[i].begin());
        a[i][cols] = sys.rhs[i];
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        const Rat inv = 1 / a[r][c];
        for (std::size_t k = c; k <= cols; ++k)
            a[r][k] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const Rat factor = a[i][c];
            for (std::size_t k = c; k <= cols; ++k)
                a[i][k] -= factor * a[r][k];
        }
        pivot_cols.push_back(c);
        ++r;
    }

    LinSolution out;
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) {
            out.status = SolveStatus::none;
            return out;
        }
    out.values.assign(cols, Rat(0));
    for (std::size_t i = 0; i < pivot_cols.size(); ++i)
        out.values[pivot_cols[i]] = a[i][cols];
    out.nullity = cols - pivot_cols.size();
    out.status = out.nullity == 0 ? SolveStatus::unique : SolveStatus::underdetermined;
    return out;
}

std::optional<Rat> rational_root(const Rat &a, unsigned l) {
    if (l == 1)
        return a;
    if (a == 0)
        return Rat(0);
    const bool neg = a < 0;
    if (neg && l % 2 == 0)
        return std::nullopt;
    mpz_class num = abs(a.get_num()), den = a.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), l) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), l))
        return std::nullopt;
    Rat out(rn, rd);
    out.canonicalize();
    return neg ? -out : out;
}

namespace {

std::optional<MultiPoly> monic_root(const MultiPoly &monic, unsigned l) {
    const auto [lead_e, lead_c] = monic.leading_term();
    Exponent root_e(lead_e.size());
    for (std::size_t i = 0; i < lead_e.size(); ++i) {
        if (lead_e[i] % l != 0)
            return std::nullopt;
        root_e[i] = lead_e[i] / l;
    }
    const auto &vars = monic.variables();
    MultiPoly q = MultiPoly::monomial(vars, root_e, Rat(1));
    // l * lead(q)^(l-1), the divisor that recovers the next root term.
    Exponent lift_e(lead_e.size());
    for (std::size_t i = 0; i < lead_e.size(); ++i)
        lift_e[i] = root_e[i] * (l - 1);

    GrlexGreater greater;
    Exponent last = root_e;
    for (;;) {
        MultiPoly residue = monic - q.pow(l);
        if (residue.is_zero())
            return q;
        auto [re, rc] = residue.leading_term();
        Exponent te(re.size());
        for (std::size_t i = 0; i < re.size(); ++i) {
            if (re[i] < lift_e[i])
                return std::nullopt;
            te[i] = re[i] - lift_e[i];
        }
        // Root terms must appear in strictly decreasing order.
        if (!greater(last, te))
            return std::nullopt;
        q.add_term(te, rc / Rat(l));
        last = te;
    }
}

} // namespace

PowerDecomposition perfect_power(const MultiPoly &p, const std::vector<unsigned> &candidates) {
    if (p.is_zero())
        throw AlgebraError("perfect_power of the zero polynomial");
    const Rat lead = p.leading_term().second;
    const MultiPoly monic = p * (1 / lead);
    std::vector<unsigned> order(candidates);
    std::sort(order.rbegin(), order.rend());
    for (unsigned l : order) {
        if (l == 0)
            continue;
        if (l == 1)
            break;
        auto q = monic_root(monic, l);
        if (!q)
            continue;
        if (auto s = rational_root(lead, l))
            return {*q * *s, l, Rat(1)};
        return {*q, l, lead};
    }
    return {p, 1, Rat(1)};
}

// ---- prime fields -------------------------------------------------------

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p < 3 || p >= (std::uint64_t{1} << 62))
        throw AlgebraError("prime out of range");
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
}
std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
}
std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a == 0)
        throw AlgebraError("inverse of zero");
    return pow(a, p_ - 2);
}

std::optional<std::uint64_t> PrimeField::reduce(const Rat &r) const {
    mpz_class m(static_cast<unsigned long>(p_));
    mpz_class n = r.get_num() % m, d = r.get_den() % m;
    if (n < 0)
        n += m;
    if (d == 0)
        return std::nullopt;
    return mul(n.get_ui(), inv(d.get_ui()));
}

std::vector<std::uint64_t> word_primes(std::size_t count, std::uint64_t seed) {
    std::vector<std::uint64_t> out;
    mpz_class x = (mpz_class(1) << 61) - mpz_class(static_cast<unsigned long>((seed % 1000003) * 7919 + 1));
    while (out.size() < count) {
        mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
        out.push_back(x.get_ui());
    }
    return out;
}

std::optional<std::uint64_t> evaluate_mod(const MultiPoly &p, const std::vector<std::uint64_t> &values,
                                          const PrimeField &field) {
    if (values.size() != p.variables().size())
        throw AlgebraError("evaluation point has wrong dimension");
    std::uint64_t acc = 0;
    for (const auto &[e, c] : p.terms()) {
        auto cm = field.reduce(c);
        if (!cm)
            return std::nullopt;
        std::uint64_t term = *cm;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                term = field.mul(term, field.pow(values[i], e[i]));
        acc = field.add(acc, term);
    }
    return acc;
}

bool probably_zero(const MultiPoly &p, const ZeroTestPolicy &policy) {
    if (policy.exact || p.is_zero())
        return p.is_zero();
    std::mt19937_64 rng(policy.seed);
    for (auto prime : word_primes(static_cast<std::size_t>(policy.primes), policy.seed)) {
        PrimeField field(prime);
        for (int k = 0; k < policy.points_per_prime; ++k) {
            std::vector<std::uint64_t> point(p.variables().size());
            for (auto &v : point)
                v = 1 + rng() % (prime - 1);
            auto val = evaluate_mod(p, point, field);
            if (val && *val != 0)
                return false;
        }
    }
    return true;
}

} // namespace valjet
