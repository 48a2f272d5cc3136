#pragma once

#include "valjet/jets.hpp"

#include <optional>

namespace valjet {

/// nu_C(h) with its certificate: the leading t-coefficient of h at the
/// generic point of C_m (m = level_used), a polynomial in u1 and w0.
struct ValuationResult {
    /// nullopt when h vanishes on the branch.
    std::optional<long> value;
    int level_used = 0;
    int tail = 0;
    long kappa = 0;
    MultiPoly witness;
};

ValuationResult nu_C(const MultiPoly &h, ContactProfile &profile);
ValuationResult nu_C(const MultiPoly &h, const BranchParam &param);

/// Value of h along the branch (pure arc only, no certificate).
std::optional<long> branch_value(const MultiPoly &h, ContactProfile &profile);

/// floor(l * mult(f) / mult(h)).
long kappa_bound(long l, int mult_f, int mult_h);
long kappa_bound(long l, const MultiPoly &f, const MultiPoly &h);

/// h = c * ((x1^n - alpha*x0^m)^delta + terms above the Newton polygon), or a
/// pure power of x0 or x1.
struct NewtonForm {
    enum class Shape { binomial, x0_power, x1_power };
    Shape shape = Shape::binomial;
    long n = 1;
    long m = 1;
    Rat alpha{0};
    long delta = 1;
    Rat scale{1};
    /// (a, b, c_ab) with x0^a x1^b strictly above the Newton polygon.
    std::vector<std::tuple<long, long, Rat>> above;
};

NewtonForm newton_form(const MultiPoly &h);

enum class InitialKind { monomial_x0, monomial_x1, binomial_power };

struct NewtonEstimate {
    long value = 0;
    InitialKind kind = InitialKind::monomial_x0;
    MultiPoly initial;
};

NewtonEstimate newton_estimate(const NewtonForm &h, const NewtonForm &f, const SemigroupData &sg);

struct InitialForm {
    MultiPoly P;
    long value = 0;
};

/// Minimal sub-sum P of the terms of h with nu_C(h - P) > nu_C(h).
InitialForm initial_form(const MultiPoly &h, ContactProfile &profile);
InitialForm initial_form(const MultiPoly &h, const BranchParam &param);

/// Divisorial valuation of the component of Cont^p(C) (p >= n_g * beta_bar_g):
/// the order of h at the generic arc of contact p with the branch.
long nu_E(const MultiPoly &h, ContactProfile &profile, long p);
long nu_E(const MultiPoly &h, const BranchParam &param, long p);

} // namespace valjet
