#include "valjet/jets.hpp"

namespace valjet {

JetExpansion expand_jets(const MultiPoly &f, int m) {
    if (m < 0)
        throw AlgebraError("negative jet level");
    const MultiPoly fc = f.compact();
    std::vector<std::string> universe;
    for (const auto &v : fc.variables())
        for (int i = 0; i <= m; ++i)
            universe.push_back(jet_name(v, i));
    std::map<std::string, TruncSeries> subs;
    for (const auto &v : fc.variables()) {
        TruncSeries s(m);
        for (int i = 0; i <= m; ++i)
            s[i] = MultiPoly::variable(jet_name(v, i), universe);
        subs[v] = s;
    }
    const TruncSeries out = series_compose(fc, subs, m);
    JetExpansion ex{f, m, {}};
    for (int i = 0; i <= m; ++i)
        ex.F.push_back(out[i].with_variables(universe).compact());
    return ex;
}

ContactProfile::ContactProfile(const BranchParam &param) : ContactProfile(param, branch_curve(param)) {}

ContactProfile::ContactProfile(const BranchParam &param, const MultiPoly &curve)
    : param_(param), curve_(curve) {}

void ContactProfile::reserve(int level) {
    if (level > param_.truncation)
        param_ = extend_param(param_, std::max(level, 2 * param_.truncation));
}

const SemigroupData &ContactProfile::semigroup() {
    while (!sg_) {
        try {
            sg_ = valjet::semigroup(param_);
        } catch (const AlgebraError &e) {
            if (std::string(e.what()) != "truncation too small" || param_.closed_form || !param_.curve ||
                param_.truncation > 4096)
                throw;
            reserve(2 * param_.truncation + 1);
        }
    }
    return *sg_;
}

std::optional<int> ContactProfile::phi(int K, int level) {
    reserve(level);
    return contact_order(curve_, param_, level, K);
}

int ContactProfile::tail_for_level(int m) {
    // phi is strictly increasing in K, and phi(m + 1) >= m + 1.
    int lo = 1, hi = m + 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        auto v = phi(mid, m + 1);
        if (!v || *v >= m + 1)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

bool ContactProfile::codim_jump(int m) {
    if (multiplicity(curve_) < 2)
        throw AlgebraError("use trivial case: smooth branch, generating sequence is x0, x1, f");
    auto v = phi(tail_for_level(m), m + 1);
    return v && *v == m + 1;
}

bool codim_jump(const BranchParam &param, int m) {
    ContactProfile profile(param);
    return profile.codim_jump(m);
}

std::string ContactVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i)
            s += ", ";
        s += entries[i].order ? std::to_string(*entries[i].order) : "above-level";
    }
    return s + ")";
}

ContactVector contact_vector(const GenericJet &jet, const std::vector<Tracked> &tracked) {
    ContactVector v;
    for (const auto &t : tracked) {
        const TruncSeries s = series_compose(t.poly, jet.coords, jet.level);
        const int o = s.order();
        v.entries.push_back({t.name, o < 0 ? std::nullopt : std::optional<int>(o)});
    }
    return v;
}

ContactVector contact_vector(ContactProfile &profile, int m, const std::vector<Tracked> &tracked) {
    const int K = profile.tail_for_level(m);
    const auto arc = contact_arc(profile.param(), m, K);
    ContactVector v;
    for (const auto &t : tracked) {
        const int o = compose_contact(t.poly, arc).order();
        v.entries.push_back({t.name, o < 0 ? std::nullopt : std::optional<int>(o)});
    }
    return v;
}

std::string ComponentDescriptor::label() const {
    switch (kind) {
    case ComponentKind::whole:
        return "C_" + std::to_string(m) + "^0";
    case ComponentKind::C_I:
        return "C_{" + std::to_string(m) + "," + std::to_string(kappa) + ",I}";
    case ComponentKind::C_v:
        return "C^" + std::to_string(j) + "_{" + std::to_string(m) + "," + std::to_string(kappa) + ",v}";
    case ComponentKind::B:
        return "B_" + std::to_string(m);
    }
    return "";
}

std::vector<ComponentDescriptor> classify_components(const SemigroupData &sg, int m) {
    if (m < 1)
        throw AlgebraError("component classification needs m >= 1");
    if (sg.g < 1)
        throw AlgebraError("use trivial case: smooth branch");
    const long b0 = sg.beta_bar[0], b1 = sg.beta_bar[1], e1 = sg.e[1], n1 = sg.n_seq[0];
    std::vector<ComponentDescriptor> out;
    if (m < n1 * b1 + e1) {
        ComponentDescriptor d;
        d.kind = ComponentKind::whole;
        d.m = m;
        d.boundary = m == n1 * b1 + e1 - 1;
        out.push_back(d);
        return out;
    }
    const long q = (m - e1) / (n1 * b1);
    for (long kappa = 1; kappa * b0 * b1 + e1 <= m; ++kappa) {
        ComponentDescriptor d;
        d.kind = ComponentKind::C_I;
        d.m = m;
        d.kappa = static_cast<int>(kappa);
        d.contact_order = Rat(kappa * b0);
        d.boundary = kappa * b0 * b1 + e1 == m;
        out.push_back(d);
    }
    for (int j = 2; j <= sg.g; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        long prefix = 1; // n_1 ... n_{j-1}
        for (int i = 1; i < j; ++i)
            prefix *= sg.n_seq[static_cast<std::size_t>(i - 1)];
        long suffix = 1; // n_j ... n_g
        for (int i = j; i <= sg.g; ++i)
            suffix *= sg.n_seq[static_cast<std::size_t>(i - 1)];
        const long nj = sg.n_seq[uj - 1];
        for (long kappa = 1; kappa * prefix * b1 + e1 <= m; ++kappa) {
            if (kappa % nj == 0 || m >= kappa * sg.beta_bar[uj])
                continue;
            ComponentDescriptor d;
            d.kind = ComponentKind::C_v;
            d.m = m;
            d.kappa = static_cast<int>(kappa);
            d.j = j;
            d.contact_order = Rat(kappa * b0, suffix);
            d.contact_order.canonicalize();
            d.boundary = kappa * prefix * b1 + e1 == m || m + 1 == kappa * sg.beta_bar[uj];
            out.push_back(d);
        }
    }
    ComponentDescriptor b;
    b.kind = ComponentKind::B;
    b.m = m;
    b.contact_order = Rat(n1 * q);
    b.boundary = (q + 1) * n1 * b1 + e1 == m + 1 || q * n1 * b1 + e1 == m;
    out.push_back(b);
    return out;
}

} // namespace valjet
