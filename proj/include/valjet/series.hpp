#pragma once

#include "valjet/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace valjet {

/// Truncated power series in t with polynomial coefficients: c_0 + c_1 t + ...
/// + c_m t^m. The level m is explicit; binary operations truncate to the
/// smaller level.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int level);
    TruncSeries(std::vector<MultiPoly> coefficients);

    static TruncSeries constant(const MultiPoly &c, int level);
    /// c * t^k truncated at `level`.
    static TruncSeries monomial(const MultiPoly &c, int k, int level);

    int level() const { return static_cast<int>(coeffs_.size()) - 1; }
    const MultiPoly &operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    MultiPoly &operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }
    const std::vector<MultiPoly> &coefficients() const { return coeffs_; }

    /// t-order of the first nonzero coefficient, or -1 if all vanish.
    int order() const;
    bool is_zero() const { return order() < 0; }
    TruncSeries truncate(int level) const;

    TruncSeries &operator+=(const TruncSeries &o);
    TruncSeries &operator-=(const TruncSeries &o);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries &b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries &b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b);
    TruncSeries scaled(const MultiPoly &c) const;

    friend bool operator==(const TruncSeries &a, const TruncSeries &b);

private:
    std::vector<MultiPoly> coeffs_;
};

/// Coefficients 0..m of f(substitutes). Every variable of f needs a substitute
/// of level at least m.
TruncSeries series_compose(const MultiPoly &f, const std::map<std::string, TruncSeries> &substitution,
                           int m);

} // namespace valjet
