#include "valjet/series.hpp"

#include <algorithm>

namespace valjet {

TruncSeries::TruncSeries(int level) : coeffs_(static_cast<std::size_t>(level + 1)) {
    if (level < 0)
        throw AlgebraError("negative truncation level");
}

TruncSeries::TruncSeries(std::vector<MultiPoly> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty())
        throw AlgebraError("series needs at least one coefficient");
}

TruncSeries TruncSeries::constant(const MultiPoly &c, int level) {
    TruncSeries s(level);
    s.coeffs_[0] = c;
    return s;
}

TruncSeries TruncSeries::monomial(const MultiPoly &c, int k, int level) {
    TruncSeries s(level);
    if (k <= level)
        s.coeffs_[static_cast<std::size_t>(k)] = c;
    return s;
}

int TruncSeries::order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero())
            return static_cast<int>(i);
    return -1;
}

TruncSeries TruncSeries::truncate(int level) const {
    if (level > this->level())
        throw AlgebraError("cannot raise truncation level");
    return TruncSeries(std::vector<MultiPoly>(coeffs_.begin(), coeffs_.begin() + level + 1));
}

TruncSeries &TruncSeries::operator+=(const TruncSeries &o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

TruncSeries &TruncSeries::operator-=(const TruncSeries &o) {
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

TruncSeries operator*(const TruncSeries &a, const TruncSeries &b) {
    const int m = std::min(a.level(), b.level());
    TruncSeries out(m);
    for (int i = 0; i <= m; ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= m; ++j) {
            if (b[j].is_zero())
                continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

TruncSeries TruncSeries::scaled(const MultiPoly &c) const {
    TruncSeries out = *this;
    for (auto &x : out.coeffs_)
        x = x * c;
    return out;
}

bool operator==(const TruncSeries &a, const TruncSeries &b) {
    if (a.level() != b.level())
        return false;
    for (int i = 0; i <= a.level(); ++i)
        if (!(a[i] == b[i]))
            return false;
    return true;
}

TruncSeries series_compose(const MultiPoly &f, const std::map<std::string, TruncSeries> &substitution,
                           int m) {
    const auto &vars = f.variables();
    std::vector<std::uint32_t> maxdeg(vars.size(), 0);
    for (const auto &[e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            maxdeg[i] = std::max(maxdeg[i], e[i]);

    std::vector<std::vector<TruncSeries>> powers(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (maxdeg[i] == 0)
            continue;
        auto it = substitution.find(vars[i]);
        if (it == substitution.end())
            throw AlgebraError("no substitute for variable " + vars[i]);
        if (it->second.level() < m)
            throw AlgebraError("substitute for " + vars[i] + " has level below " + std::to_string(m));
        TruncSeries base = it->second.truncate(m);
        powers[i].push_back(TruncSeries::constant(MultiPoly::constant(Rat(1)), m));
        for (std::uint32_t k = 1; k <= maxdeg[i]; ++k)
            powers[i].push_back(powers[i].back() * base);
    }

    TruncSeries out(m);
    for (const auto &[e, c] : f.terms()) {
        TruncSeries term = TruncSeries::constant(MultiPoly::constant(c), m);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                term = term * powers[i][e[i]];
        out += term;
    }
    return out;
}

} // namespace valjet
