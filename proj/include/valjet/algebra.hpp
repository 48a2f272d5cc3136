#pragma once

#include "valjet/poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace valjet {

// ---- dense linear systems over Q ------------------------------------------

struct LinSystem {
    std::vector<std::vector<Rat>> matrix;
    std::vector<Rat> rhs;
};

enum class SolveStatus { unique, none, underdetermined };

struct LinSolution {
    SolveStatus status = SolveStatus::none;
    /// Unique solution, or one particular solution (free variables set to 0).
    std::vector<Rat> values;
    std::size_t nullity = 0;
};

/// Exact Gaussian elimination. Solvability is reported, never assumed.
LinSolution lin_solve(const LinSystem &sys);

// ---- perfect powers --------------------------------------------------------

/// p = constant * root^exponent.
struct PowerDecomposition {
    MultiPoly root;
    unsigned exponent = 1;
    Rat constant{1};
};

/// Largest l in `candidates` for which p is a constant times an l-th power.
/// The root absorbs the constant when a rational l-th root of it exists;
/// otherwise the root is monic (grlex-leading coefficient 1) and the constant
/// is reported. l = 1 always succeeds.
PowerDecomposition perfect_power(const MultiPoly &p, const std::vector<unsigned> &candidates);

/// Exact rational l-th root, if one exists.
std::optional<Rat> rational_root(const Rat &a, unsigned l);

// ---- word-size prime fields -------------------------------------------------

/// Arithmetic modulo a prime below 2^62.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);
    std::uint64_t modulus() const { return p_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
    /// Image of a rational; nullopt if p divides the denominator.
    std::optional<std::uint64_t> reduce(const Rat &r) const;

private:
    std::uint64_t p_;
};

/// Deterministic list of `count` distinct primes just below 2^61, derived
/// from `seed`.
std::vector<std::uint64_t> word_primes(std::size_t count, std::uint64_t seed);

/// Evaluates p at `values` (one per variable of p's universe) in F_p.
/// Returns nullopt if a coefficient denominator vanishes mod p.
std::optional<std::uint64_t> evaluate_mod(const MultiPoly &p, const std::vector<std::uint64_t> &values,
                                          const PrimeField &field);

/// How zero tests on parameter polynomials are decided.
struct ZeroTestPolicy {
    bool exact = false;
    int primes = 3;
    int points_per_prime = 2;
    std::uint64_t seed = 1;
};

/// Schwartz-Zippel zero test: false as soon as one specialization is nonzero.
bool probably_zero(const MultiPoly &p, const ZeroTestPolicy &policy);

} // namespace valjet
