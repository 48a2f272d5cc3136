#pragma once

#include "valjet/branch.hpp"

#include <optional>
#include <string>
#include <vector>

namespace valjet {

/// Jet equations F^(0..m) of f: the t-coefficients of f on the universal arc
/// z = sum z#i t^i.
struct JetExpansion {
    MultiPoly f;
    int level = 0;
    std::vector<MultiPoly> F;
};

JetExpansion expand_jets(const MultiPoly &f, int m);

/// Contact function of a branch: phi(K) = ord_t f on the arc whose x1 carries
/// a free tail at t^K. The generic point of C_m is the arc with the smallest
/// K such that phi(K) >= m + 1.
class ContactProfile {
public:
    explicit ContactProfile(const BranchParam &param);
    ContactProfile(const BranchParam &param, const MultiPoly &curve);

    const BranchParam &param() const { return param_; }
    const MultiPoly &curve() const { return curve_; }

    /// ord_t f on the tail-K arc, or nullopt if it exceeds `level`.
    std::optional<int> phi(int K, int level);
    /// Tail contact of the generic point of C_m.
    int tail_for_level(int m);
    /// Whether F^(m+1) is nonzero at the generic point of C_m.
    bool codim_jump(int m);

    /// Extends the parametrization so that it is exact through `level`.
    void reserve(int level);
    /// Semigroup data, extending the truncation past the conductor if needed.
    const SemigroupData &semigroup();

private:
    BranchParam param_;
    MultiPoly curve_;
    std::optional<SemigroupData> sg_;
};

bool codim_jump(const BranchParam &param, int m);

/// Order of one tracked element; nullopt means above the jet level.
struct ContactEntry {
    std::string name;
    std::optional<int> order;
    friend bool operator==(const ContactEntry &, const ContactEntry &) = default;
};

struct ContactVector {
    std::vector<ContactEntry> entries;
    friend bool operator==(const ContactVector &, const ContactVector &) = default;
    std::string str() const;
};

struct Tracked {
    std::string name;
    MultiPoly poly;
};

/// Orders of the tracked polynomials (in x0, x1 or registered coordinates)
/// at the jet, capped at its level.
ContactVector contact_vector(const GenericJet &jet, const std::vector<Tracked> &tracked);

/// Same, at the generic point of C_m computed through the reduced arc model.
ContactVector contact_vector(ContactProfile &profile, int m, const std::vector<Tracked> &tracked);

enum class ComponentKind { whole, C_I, C_v, B };

struct ComponentDescriptor {
    ComponentKind kind = ComponentKind::whole;
    int m = 0;
    int kappa = 0;
    int j = 0;
    /// Contact order along x0 (threshold for B_m).
    Rat contact_order{0};
    /// An inequality defining the family holds with equality.
    bool boundary = false;
    std::string label() const;
};

std::vector<ComponentDescriptor> classify_components(const SemigroupData &sg, int m);

} // namespace valjet
