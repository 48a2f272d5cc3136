#pragma once

#include "valjet/genseq.hpp"

#include <map>
#include <string>
#include <vector>

namespace valjet {

using IVec = std::vector<long>;

/// Simplicial cone spanned by primitive, linearly independent vectors.
struct Cone {
    std::vector<IVec> gens;
    long det() const;
    bool regular() const;
    /// Coordinates of v in the generators, nullopt when v is outside the cone.
    std::optional<std::vector<Rat>> coordinates(const IVec &v) const;
    friend bool operator==(const Cone &, const Cone &) = default;
};

/// Simplicial fan supported on the positive orthant, stored by its maximal
/// cones; faces are implicit.
struct Fan {
    int dim = 0;
    std::vector<Cone> cones;
    std::vector<IVec> rays() const;
    bool has_ray(const IVec &v) const;
    bool has_cone(const Cone &c) const;
    /// Generators ordered by coordinate sum (ties: lexicographically
    /// greatest first); cones sorted.
    void canonicalize();
};

Fan orthant_fan(int dim);
IVec primitive(IVec v);

/// Triangular embedding of the plane: relations y_i - f_i(x0, x1, y2, ...).
struct Embedding {
    std::vector<std::string> names;
    std::vector<MultiPoly> relations;
    int dim() const { return static_cast<int>(names.size()); }
};

Embedding build_embedding(const GenSeq &gs);
IVec weight_vector(const GenSeq &gs);

/// Common refinement of the dual Newton fans of the relations, triangulated
/// without new rays. Exact for ambient dimension <= 3.
Fan dual_fan_refinement(const Embedding &emb);

Fan stellar_subdivide(const Fan &fan, const IVec &v);

struct RegularizationError : AlgebraError {
    RegularizationError(const std::string &what, Fan partial_fan) : AlgebraError(what), partial(std::move(partial_fan)) {}
    Fan partial;
};

/// Stellar subdivisions at minimal parallelepiped points until every cone is
/// unimodular.
Fan regularize(const Fan &fan, int cap = 10000);

/// z_i -> prod_r u_r^(g_r)_i for a regular cone.
struct MonomialMap {
    std::vector<IVec> gens;
    std::vector<std::string> ambient;
    std::vector<std::string> chart;
    std::map<std::string, MultiPoly> substitution() const;
    MultiPoly pullback(const MultiPoly &p) const;
};

MonomialMap chart_map(const Cone &cone, const std::vector<std::string> &ambient);

struct StrictTransform {
    MultiPoly cofactor;
    /// Largest monomial dividing the pullback.
    MultiPoly factor;
};

std::vector<StrictTransform> strict_transform(const Embedding &emb, const MonomialMap &map);

/// The strict transform as a graph over the remaining chart coordinates,
/// possibly cut by one residual hypersurface.
struct ChartSurface {
    /// "graph", "euler", "empty" or "undecided".
    std::string certificate;
    /// Eliminated chart variables and their expressions.
    std::map<std::string, MultiPoly> solved;
    std::vector<std::string> coordinates;
    /// Zero when the surface is a pure graph.
    MultiPoly residual;
};

/// Smoothness certificate of a hypersurface eq = 0: "empty" (nonzero
/// constant), "graph" (linear in a variable with constant coefficient),
/// "euler" (nonzero constant term and quasi-homogeneous remainder, so the
/// weighted Euler derivative is a nonzero constant on the zero set), or "".
std::string smooth_certificate(const MultiPoly &eq);

/// Eliminates variables in which a cofactor is linear with constant
/// coefficient, trying `preferred` first; a last non-graph equation is kept
/// as residual when it has an Euler certificate.
ChartSurface chart_surface(const std::vector<StrictTransform> &st, const std::vector<std::string> &preferred);

/// Pullback of an ambient polynomial restricted to the strict transform.
MultiPoly restrict_total(const MultiPoly &p, const MonomialMap &map, const ChartSurface &surface);

struct ElementOrder {
    std::string name;
    long expected = 0;
    std::optional<long> order;
};

struct ChartReport {
    Cone cone;
    std::vector<StrictTransform> strict;
    std::string certificate;
    bool contains_ray = false;
    /// Equation of E inside the strict transform (charts containing the ray).
    MultiPoly divisor;
    bool transversal = false;
    std::vector<ElementOrder> orders;
    bool ok() const;
};

struct ResolutionReport {
    bool regular = true;
    bool ray_present = false;
    std::vector<ChartReport> charts;
    bool ok() const;
};

ResolutionReport verify_resolution(const Embedding &emb, const Fan &fan, const IVec &v, const GenSeq &gs);

struct NondegeneracyEntry {
    MultiPoly relation;
    MultiPoly initial;
    bool binomial = false;
    bool vanishes = false;
};

std::vector<NondegeneracyEntry> check_nondegeneracy(const Embedding &emb, const IVec &alpha);

struct ToricPipeline {
    Embedding embedding;
    IVec weight;
    /// True when the dual fan was computed exactly (dim <= 3).
    bool exact_dual = true;
    Fan dual;
    Fan fan;
    /// Maximal cones where some relation's initial form is not constant.
    std::vector<Cone> incompatible;
    ResolutionReport report;
};

ToricPipeline toric_pipeline(const GenSeq &gs, int cap = 10000);

/// Initial form of p for the weight w (one entry per variable of p's universe).
MultiPoly initial_form_at(const MultiPoly &p, const IVec &w);

} // namespace valjet
