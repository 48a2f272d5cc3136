#pragma once

#include "valjet/algebra.hpp"
#include "valjet/poly.hpp"
#include "valjet/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace valjet {

/// Raised when an internal consistency check fails (a bug or a violated claim).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Puiseux parametrization x0 = tau^n, x1 = sum c_k tau^k of a plane branch.
struct BranchParam {
    int n = 1;
    /// (k, c_k) with c_k != 0, k strictly increasing.
    std::vector<std::pair<int, Rat>> x1_terms;
    /// Highest tau-degree known to be exact.
    int truncation = 0;
    /// True when x1_terms is the complete series (no terms beyond truncation).
    bool closed_form = false;
    /// Defining polynomial, when the branch came from one.
    std::optional<MultiPoly> curve;

    Rat coefficient(int k) const;
};

/// Term-by-term Newton-Puiseux expansion through tau^truncation.
BranchParam newton_puiseux(const MultiPoly &f, int truncation);

/// Recomputes or extends the parametrization so that it is exact through
/// tau^truncation.
BranchParam extend_param(const BranchParam &param, int truncation);

struct CoordinateChange {
    MultiPoly result;
    bool swapped = false;
    /// x1 <- x1 + lambda*x0 applied after the optional swap.
    Rat lambda{0};
    std::string description;
};

/// Linear change (swap and/or x1 <- x1 + lambda*x0) making x0 = 0
/// transversal and x1 = 0 tangent.
CoordinateChange normalize_coordinates(const MultiPoly &f);

/// Multiplicity (order) of a polynomial at the origin.
int multiplicity(const MultiPoly &f);

struct SemigroupData {
    int g = 0;
    std::vector<long> beta_bar;
    std::vector<long> e;
    /// Characteristic exponents beta_1..beta_g (index 0 holds n).
    std::vector<long> beta;
    /// n_seq[i-1] = n_i, m_seq[i-1] = m_i for i = 1..g.
    std::vector<long> n_seq;
    std::vector<long> m_seq;
    /// b[i-1][j] = b_ij for i = 1..g, 0 <= j < i.
    std::vector<std::vector<long>> b;

    /// Conductor of the value semigroup.
    long conductor() const;
    bool contains(long value) const;
};

SemigroupData semigroup(const BranchParam &param);

/// Monic polynomial in x1 vanishing on the parametrization (the norm of
/// x1 - X(tau) over Q(x0)); exact when the parametrization is closed form.
MultiPoly defining_polynomial(const BranchParam &param);

/// The defining curve of a branch: the stored one, or the norm polynomial.
MultiPoly branch_curve(const BranchParam &param);

// ---- arcs through the generic point of C_m --------------------------------

/// Truncated series in t whose t^k coefficient is a polynomial in w0 of the
/// form sum_j a_j u1^(k - K*j) w0^j, stored with u1 = 1 (weighted
/// homogeneity makes u1 recoverable). This is the exact image of the generic
/// point of C_m for every order and leading-coefficient question.
class ContactSeries {
public:
    ContactSeries() = default;
    ContactSeries(int level, int tail);

    int level() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Contact order K of the free tail, 0 when there is none.
    int tail() const { return tail_; }
    const std::vector<Rat> &operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    std::vector<Rat> &operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }

    int order() const;
    /// Coefficient of t^k as a polynomial in u1 and w0.
    MultiPoly coefficient(int k) const;

    ContactSeries &operator+=(const ContactSeries &o);
    ContactSeries &operator-=(const ContactSeries &o);
    ContactSeries scaled(const Rat &c) const;
    friend ContactSeries operator*(const ContactSeries &a, const ContactSeries &b);

private:
    int tail_ = 0;
    std::vector<std::vector<Rat>> coeffs_;
};

/// Coordinates (x0, x1) of the arc tau = u1*t, x1 += w0*t^tail, through t^level.
std::pair<ContactSeries, ContactSeries> contact_arc(const BranchParam &param, int level, int tail);

/// h(x0(t), x1(t)) for h in x0, x1.
ContactSeries compose_contact(const MultiPoly &h, const std::pair<ContactSeries, ContactSeries> &arc);

/// Order of h along the arc, or nullopt when above the level.
std::optional<int> contact_order(const MultiPoly &h, const BranchParam &param, int level, int tail);

// ---- symbolic generic jet ---------------------------------------------------

enum class JetModel {
    /// u1..um and tail parameters w0.. all symbolic.
    full,
    /// Only u1 and w0 symbolic; exact for orders and leading coefficients.
    reduced,
};

struct GenericJet {
    BranchParam source;
    int level = 0;
    int tail = 0;
    JetModel model = JetModel::full;
    std::vector<std::string> params;
    std::map<std::string, TruncSeries> coords;
};

GenericJet generic_jet(const BranchParam &param, int m, JetModel model = JetModel::full, int tail = 0);

/// Adds coordinate `name` = p(x0, x1, registered coordinates) to the jet.
void register_coordinate(GenericJet &jet, const std::string &name, const MultiPoly &p);

/// Substitutes the t^i coefficient for each jet variable z#i.
MultiPoly evaluate_at_jet(const MultiPoly &p, const GenericJet &jet);

// ---- word-size specializations ----------------------------------------------

/// The generic jet with every parameter specialized to a random value mod p.
struct JetSample {
    PrimeField field{2};
    int level = 0;
    std::map<std::string, std::vector<std::uint64_t>> coords;
};

/// Returns nullopt when a parametrization coefficient does not reduce mod p.
std::optional<JetSample> sample_jet(const BranchParam &param, int m, int tail, const PrimeField &field,
                                    std::uint64_t seed);

/// Series of h(x0, x1, registered coordinates) mod p through t^level.
std::vector<std::uint64_t> compose_sample(const MultiPoly &h, const JetSample &sample);

void register_coordinate(JetSample &sample, const std::string &name, const MultiPoly &p);

/// Value of a jet-variable polynomial at the sample; nullopt on bad reduction.
std::optional<std::uint64_t> evaluate_at_sample(const MultiPoly &p, const JetSample &sample);

} // namespace valjet
