#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace valjet {

/// Exact rational number. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat parse_rat(const std::string &text);
std::string to_string(const Rat &r);

using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order, greater first: higher total degree wins, ties
/// broken lexicographically on the declared variable order.
struct GrlexGreater {
    bool operator()(const Exponent &a, const Exponent &b) const;
};

/// Domain error raised by algebraic operations (bad input, not a bug).
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multivariate polynomial with rational coefficients over a named, ordered
/// set of variables. Zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponent, Rat, GrlexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> variables);

    static MultiPoly constant(const Rat &c, std::vector<std::string> variables = {});
    static MultiPoly variable(const std::string &name);
    static MultiPoly variable(const std::string &name, std::vector<std::string> variables);
    static MultiPoly monomial(std::vector<std::string> variables, Exponent exponent, Rat coeff);

    const std::vector<std::string> &variables() const { return vars_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }

    /// Index of a variable in this polynomial's universe, if present.
    std::optional<std::size_t> index_of(const std::string &name) const;

    /// Same polynomial expressed over another universe. Every variable that
    /// occurs with a nonzero exponent must exist in the target universe.
    MultiPoly with_variables(const std::vector<std::string> &variables) const;
    /// Drops variables that do not occur in any term.
    MultiPoly compact() const;

    void add_term(const Exponent &e, const Rat &c);

    MultiPoly &operator+=(const MultiPoly &other);
    MultiPoly &operator-=(const MultiPoly &other);
    MultiPoly &operator*=(const MultiPoly &other);
    MultiPoly &operator*=(const Rat &c);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly &b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b);
    friend MultiPoly operator*(MultiPoly a, const Rat &c) { return a *= c; }
    friend MultiPoly operator*(const Rat &c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;

    /// Structural equality after unifying universes by name.
    friend bool operator==(const MultiPoly &a, const MultiPoly &b);

    MultiPoly pow(long exponent) const;

    std::uint32_t degree_in(const std::string &name) const;
    std::uint32_t total_degree() const;
    /// Lowest total degree of a term (multiplicity at the origin); 0 for zero.
    std::uint32_t order() const;
    /// Homogeneous part of the given total degree.
    MultiPoly homogeneous_part(std::uint32_t degree) const;
    /// Lowest part for the weighted degree given by `weights` (one weight per
    /// variable of this universe, missing entries count as 0).
    MultiPoly initial_part(std::span<const long> weights) const;
    long weighted_order(std::span<const long> weights) const;

    Rat coefficient(const Exponent &e) const;
    Rat constant_term() const;
    /// Leading term in grlex order. Requires a nonzero polynomial.
    std::pair<Exponent, Rat> leading_term() const;

    MultiPoly derivative(const std::string &name) const;
    /// Substitutes polynomials for variables; variables without an entry are
    /// kept as they are.
    MultiPoly substitute(const std::map<std::string, MultiPoly> &subs) const;
    /// Splits into coefficients of powers of `name`: result[k] multiplies name^k.
    std::vector<MultiPoly> coefficients_in(const std::string &name) const;

    /// Renders in the polynomial grammar, terms in descending grlex order.
    std::string str() const;

private:
    static std::vector<std::string> merge_universe(const std::vector<std::string> &a,
                                                   const std::vector<std::string> &b);

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Name of the jet coordinate z^{(i)}: "z#i".
std::string jet_name(const std::string &base, int index);
/// Splits "z#i" into ("z", i); returns nullopt for plain names.
std::optional<std::pair<std::string, int>> split_jet_name(const std::string &name);
/// Display form of a polynomial with jet variables rendered as z^(i).
std::string display(const MultiPoly &p);

struct ParseError : AlgebraError {
    ParseError(const std::string &what, std::size_t pos)
        : AlgebraError(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Parses the ASCII polynomial grammar. With an empty universe the variables
/// are collected in order of first appearance; otherwise every name must
/// belong to the universe and the result is expressed over it.
MultiPoly parse_poly(const std::string &text, const std::vector<std::string> &universe = {});
std::string render_poly(const MultiPoly &p);

} // namespace valjet
