#pragma once

#include "valjet/valuation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace valjet {

/// One generator: a polynomial in x0, x1 with its value (nullopt = infinite).
struct GenElement {
    std::string name;
    MultiPoly poly;
    std::optional<long> value;
    /// The same element written in the earlier generator names.
    MultiPoly expr;
};

/// One (mu, Q, l, Q') step of the construction.
struct GenStep {
    /// Element being corrected, e.g. "x_{2,1}".
    std::string element;
    long mu = 0;
    unsigned l = 1;
    /// 1: correction of the current element, 2: a new element is started.
    int claim = 1;
    /// Q' written in the generator names x0, x1, x2, ...
    MultiPoly q_prime;
    /// Q evaluated at the generic point of C_mu (in u1, w0).
    MultiPoly q_eval;
};

struct GenSeqState {
    SemigroupData sg;
    /// x0, x1 and the settled x2, ..., x_{i-1}.
    std::vector<GenElement> settled;
    /// Current x_{i,j} with i = settled.size() and j = corrections so far.
    MultiPoly current;
    /// current in generator names.
    MultiPoly current_expr;
    int j = 0;
    std::vector<long> l_history;
    std::vector<long> mu_history;

    int index() const { return static_cast<int>(settled.size()); }
    std::string current_name() const;
    std::vector<Tracked> tracked() const;
};

struct GenSeq {
    std::vector<GenElement> elements;
    std::vector<GenStep> log;
    std::vector<long> l_history;
    /// mu at each settlement step (mu_2, ..., mu_g).
    std::vector<long> mu_settled;
    bool divisorial = false;
    long p = 0;
};

/// Starting state x_{2,0} = x1^n1 - c^n1 x0^m1. Requires maximal contact of x1.
GenSeqState initial_state(ContactProfile &profile);

/// Smallest m >= lower with a codimension jump at m and a stable contact
/// vector from m to m+1. With `stop_at`, the jump condition is dropped and
/// the search ends at stop_at.
long detect_mu(const GenSeqState &state, ContactProfile &profile, long lower,
               std::optional<long> stop_at = std::nullopt);

struct QlResult {
    /// F^(mu+1) at the generic point of C_mu.
    MultiPoly q_power;
    /// Q with q_power = constant * Q^l.
    MultiPoly q;
    unsigned l = 1;
};

QlResult extract_Ql(ContactProfile &profile, const GenSeqState &state, long mu);

/// Q' in the leading coordinates of the settled generators (and of the
/// current one when l < l_prev), returned in generator names.
MultiPoly solve_correction(ContactProfile &profile, const GenSeqState &state, const QlResult &ql, long mu);

GenSeq run_genseq(ContactProfile &profile);
GenSeq run_genseq(const BranchParam &param);
GenSeq run_genseq(const MultiPoly &f);

/// Generating sequence of nu_E on the component of contact p >= n_g*beta_bar_g.
GenSeq run_genseq_divisorial(ContactProfile &profile, long p);
GenSeq run_genseq_divisorial(const BranchParam &param, long p);

/// Monic g of x1-degree deg(f)/e with deg_x1(f - g^e) < deg(f) - deg(f)/e.
MultiPoly approximate_root(const MultiPoly &f, long e);
/// Approximate roots of degrees n/e_0, ..., n/e_{g-1} of a curve monic in x1.
std::vector<MultiPoly> approximate_roots_oracle(const MultiPoly &f, const SemigroupData &sg);

struct GenSeqReport {
    bool ok = true;
    std::vector<std::string> lines;
    void check(bool cond, const std::string &what);
};

/// Values, mu-history, the generating property on sample polynomials and the
/// approximate-roots cross-check.
GenSeqReport verify_genseq(const GenSeq &gs, ContactProfile &profile, int samples = 12, std::uint64_t seed = 1);

/// Expands a polynomial written in generator names into x0, x1.
MultiPoly expand_generators(const MultiPoly &p, const std::vector<GenElement> &elements);

} // namespace valjet
