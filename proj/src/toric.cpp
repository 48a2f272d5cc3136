#include "valjet/toric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace valjet {

namespace {

Rat det_rat(std::vector<std::vector<Rat>> a) {
    const std::size_t n = a.size();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        if (piv == n)
            return Rat(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const Rat f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

long rank_of(const std::vector<IVec> &rows) {
    if (rows.empty())
        return 0;
    std::vector<std::vector<Rat>> a;
    for (const auto &r : rows) {
        std::vector<Rat> x;
        for (long v : r)
            x.push_back(Rat(v));
        a.push_back(x);
    }
    const std::size_t cols = a[0].size();
    long rank = 0;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t piv = row;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[row]);
        for (std::size_t r = row + 1; r < a.size(); ++r) {
            const Rat f = a[r][c] / a[row][c];
            for (std::size_t k = c; k < cols; ++k)
                a[r][k] -= f * a[row][k];
        }
        ++row;
        ++rank;
    }
    return rank;
}

long dot(const IVec &a, const IVec &b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

IVec cross(const IVec &a, const IVec &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vec(const IVec &v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

Rat frac(const Rat &x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rat(fl);
}

bool gen_before(const IVec &a, const IVec &b) {
    const long sa = std::accumulate(a.begin(), a.end(), 0L), sb = std::accumulate(b.begin(), b.end(), 0L);
    if (sa != sb)
        return sa < sb;
    return a > b;
}

std::vector<std::string> chart_names(int d) {
    const std::vector<std::string> short_names{"u", "v", "w"};
    if (d <= 3)
        return {short_names.begin(), short_names.begin() + d};
    std::vector<std::string> out;
    for (int i = 1; i <= d; ++i)
        out.push_back("u" + std::to_string(i));
    return out;
}

// Minimal nonzero lattice point of the fundamental parallelepiped.
IVec parallelepiped_point(const Cone &c) {
    const std::size_t d = c.gens.size();
    // Columns of (M^T)^-1, M having the generators as rows.
    std::vector<std::vector<Rat>> cols;
    for (std::size_t i = 0; i < d; ++i) {
        LinSystem sys;
        for (std::size_t r = 0; r < d; ++r) {
            std::vector<Rat> row;
            for (std::size_t k = 0; k < d; ++k)
                row.push_back(Rat(c.gens[k][r]));
            sys.matrix.push_back(row);
            sys.rhs.push_back(Rat(r == i ? 1 : 0));
        }
        const auto sol = lin_solve(sys);
        if (sol.status != SolveStatus::unique)
            throw AlgebraError("degenerate cone");
        std::vector<Rat> col;
        for (const auto &x : sol.values)
            col.push_back(frac(x));
        cols.push_back(col);
    }
    std::set<std::vector<Rat>> seen;
    std::queue<std::vector<Rat>> todo;
    const std::vector<Rat> zero(d, Rat(0));
    seen.insert(zero);
    todo.push(zero);
    std::optional<IVec> best;
    while (!todo.empty()) {
        const auto lam = todo.front();
        todo.pop();
        if (lam != zero) {
            IVec p(d, 0);
            for (std::size_t i = 0; i < d; ++i) {
                Rat s(0);
                for (std::size_t r = 0; r < d; ++r)
                    s += lam[r] * Rat(c.gens[r][i]);
                if (s.get_den() != 1)
                    throw InternalError("parallelepiped point is not integral");
                p[i] = s.get_num().get_si();
            }
            const long sp = std::accumulate(p.begin(), p.end(), 0L);
            if (!best || sp < std::accumulate(best->begin(), best->end(), 0L) ||
                (sp == std::accumulate(best->begin(), best->end(), 0L) && p < *best))
                best = p;
        }
        for (const auto &g : cols) {
            std::vector<Rat> next(d);
            for (std::size_t i = 0; i < d; ++i)
                next[i] = frac(lam[i] + g[i]);
            if (seen.insert(next).second)
                todo.push(next);
        }
    }
    if (!best)
        throw InternalError("regular cone has no parallelepiped point");
    return *best;
}

bool linear_with_constant(const MultiPoly &eq, const std::string &z);

MultiPoly solve_linear(const MultiPoly &eq, const std::string &z) {
    const auto parts = eq.coefficients_in(z);
    const Rat a = parts[1].constant_term();
    return parts[0] * (Rat(-1) / a);
}

bool linear_with_constant(const MultiPoly &eq, const std::string &z) {
    if (!eq.index_of(z) || eq.degree_in(z) != 1)
        return false;
    const auto parts = eq.coefficients_in(z);
    return parts[1].is_constant() && parts[1].constant_term() != 0;
}

// Exact quotient p / phi, by grlex division.
std::optional<MultiPoly> divide_exact(const MultiPoly &p, const MultiPoly &phi) {
    const auto [le, lc] = phi.leading_term();
    std::vector<std::string> vars = phi.variables();
    MultiPoly r = p.with_variables(vars), q(vars);
    while (!r.is_zero()) {
        const auto [re, rc] = r.leading_term();
        Exponent d(re.size(), 0);
        for (std::size_t i = 0; i < re.size(); ++i) {
            if (re[i] < le[i])
                return std::nullopt;
            d[i] = re[i] - le[i];
        }
        const MultiPoly m = MultiPoly::monomial(vars, d, rc / lc);
        q += m;
        r -= m * phi;
    }
    return q;
}

// Order of p along phi = 0 (phi reduced).
std::optional<long> order_along(const MultiPoly &p, const MultiPoly &phi) {
    if (p.is_zero())
        return std::nullopt;
    std::vector<std::string> vars = phi.variables();
    const MultiPoly pc = p.compact();
    for (const auto &v : pc.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    const MultiPoly f = phi.with_variables(vars);
    MultiPoly cur = p.with_variables(vars);
    long k = 0;
    while (auto q = divide_exact(cur, f)) {
        cur = *q;
        ++k;
    }
    return k;
}

bool euler_certified(const MultiPoly &eq) {
    if (eq.constant_term() == 0)
        return false;
    std::vector<Exponent> ex;
    for (const auto &[e, c] : eq.terms())
        if (std::any_of(e.begin(), e.end(), [](std::uint32_t x) { return x != 0; }))
            ex.push_back(e);
    if (ex.empty())
        return false;
    LinSystem sys;
    for (std::size_t i = 1; i < ex.size(); ++i) {
        std::vector<Rat> row;
        for (std::size_t k = 0; k < ex[i].size(); ++k)
            row.push_back(Rat(static_cast<long>(ex[i][k]) - static_cast<long>(ex[0][k])));
        sys.matrix.push_back(row);
        sys.rhs.push_back(Rat(0));
    }
    std::vector<Rat> row;
    for (auto x : ex[0])
        row.push_back(Rat(static_cast<long>(x)));
    sys.matrix.push_back(row);
    sys.rhs.push_back(Rat(1));
    return lin_solve(sys).status != SolveStatus::none;
}

std::string y_name(const std::string &element) {
    return element.size() > 1 && element[0] == 'x' && element != "x0" && element != "x1" ? "y" + element.substr(1)
                                                                                          : element;
}

std::vector<const GenElement *> embedded_elements(const GenSeq &gs) {
    std::vector<const GenElement *> out;
    for (const auto &e : gs.elements)
        if (e.name != "f")
            out.push_back(&e);
    return out;
}

} // namespace

// ---- cones and fans -------------------------------------------------------------

long Cone::det() const {
    std::vector<std::vector<Rat>> a;
    for (const auto &g : gens) {
        std::vector<Rat> row;
        for (long x : g)
            row.push_back(Rat(x));
        a.push_back(row);
    }
    return det_rat(a).get_num().get_si();
}

bool Cone::regular() const { return std::labs(det()) == 1; }

std::optional<std::vector<Rat>> Cone::coordinates(const IVec &v) const {
    const std::size_t d = gens.size();
    LinSystem sys;
    for (std::size_t r = 0; r < v.size(); ++r) {
        std::vector<Rat> row;
        for (std::size_t k = 0; k < d; ++k)
            row.push_back(Rat(gens[k][r]));
        sys.matrix.push_back(row);
        sys.rhs.push_back(Rat(v[r]));
    }
    const auto sol = lin_solve(sys);
    if (sol.status != SolveStatus::unique)
        return std::nullopt;
    for (const auto &x : sol.values)
        if (x < 0)
            return std::nullopt;
    return sol.values;
}

std::vector<IVec> Fan::rays() const {
    std::set<IVec> s;
    for (const auto &c : cones)
        s.insert(c.gens.begin(), c.gens.end());
    std::vector<IVec> out(s.begin(), s.end());
    std::sort(out.begin(), out.end(), gen_before);
    return out;
}

bool Fan::has_ray(const IVec &v) const {
    for (const auto &c : cones)
        if (std::find(c.gens.begin(), c.gens.end(), v) != c.gens.end())
            return true;
    return false;
}

bool Fan::has_cone(const Cone &c) const {
    std::vector<IVec> key = c.gens;
    std::sort(key.begin(), key.end());
    for (const auto &x : cones) {
        std::vector<IVec> k2 = x.gens;
        std::sort(k2.begin(), k2.end());
        if (k2 == key)
            return true;
    }
    return false;
}

void Fan::canonicalize() {
    for (auto &c : cones)
        std::sort(c.gens.begin(), c.gens.end(), gen_before);
    std::sort(cones.begin(), cones.end(), [](const Cone &a, const Cone &b) { return a.gens < b.gens; });
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
}

Fan orthant_fan(int dim) {
    Fan f;
    f.dim = dim;
    Cone c;
    for (int i = 0; i < dim; ++i) {
        IVec e(static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(i)] = 1;
        c.gens.push_back(e);
    }
    f.cones.push_back(c);
    f.canonicalize();
    return f;
}

IVec primitive(IVec v) {
    long g = 0;
    for (long x : v)
        g = std::gcd(g, std::labs(x));
    if (g > 1)
        for (auto &x : v)
            x /= g;
    return v;
}

// ---- embedding ------------------------------------------------------------------

Embedding build_embedding(const GenSeq &gs) {
    Embedding emb;
    const auto elems = embedded_elements(gs);
    std::vector<GenElement> all;
    std::map<std::string, MultiPoly> rename;
    for (const auto *e : elems) {
        emb.names.push_back(y_name(e->name));
        all.push_back(*e);
        if (y_name(e->name) != e->name)
            rename[e->name] = MultiPoly::variable(y_name(e->name));
    }
    for (const auto *e : elems) {
        if (e->name == "x0" || e->name == "x1")
            continue;
        if (expand_generators(e->expr, all) != e->poly)
            throw InternalError("expression of " + e->name + " does not expand to its polynomial");
        const MultiPoly rhs = e->expr.compact().substitute(rename).compact();
        emb.relations.push_back((MultiPoly::variable(y_name(e->name)) - rhs).with_variables(emb.names));
    }
    return emb;
}

IVec weight_vector(const GenSeq &gs) {
    IVec w;
    for (const auto *e : embedded_elements(gs)) {
        if (!e->value)
            throw AlgebraError("generator " + e->name + " has no value");
        w.push_back(*e->value);
    }
    return w;
}

// ---- dual fans ------------------------------------------------------------------

Fan dual_fan_refinement(const Embedding &emb) {
    const int d = emb.dim();
    if (d > 3)
        throw AlgebraError("exact dual fan refinement needs ambient dimension <= 3");
    if (emb.relations.empty())
        return orthant_fan(d);
    const auto ud = static_cast<std::size_t>(d);
    // Newton polyhedron of the product of the relations.
    std::set<IVec> S{IVec(ud, 0)};
    for (const auto &rel : emb.relations) {
        std::set<IVec> next;
        const MultiPoly r = rel.with_variables(emb.names);
        for (const auto &[e, c] : r.terms())
            for (const auto &s : S) {
                IVec t = s;
                for (std::size_t i = 0; i < ud; ++i)
                    t[i] += static_cast<long>(e[i]);
                next.insert(t);
            }
        S = std::move(next);
    }
    Fan fan;
    fan.dim = d;
    for (const auto &a : S) {
        std::vector<IVec> normals;
        for (std::size_t i = 0; i < ud; ++i) {
            IVec e(ud, 0);
            e[i] = 1;
            normals.push_back(e);
        }
        for (const auto &b : S)
            if (b != a) {
                IVec n(ud);
                for (std::size_t i = 0; i < ud; ++i)
                    n[i] = b[i] - a[i];
                normals.push_back(primitive(n));
            }
        std::set<IVec> cand;
        auto consider = [&](IVec c) {
            if (is_zero_vec(c))
                return;
            c = primitive(c);
            for (const auto &n : normals)
                if (dot(c, n) < 0)
                    return;
            cand.insert(c);
        };
        if (d == 1) {
            consider({1});
        } else if (d == 2) {
            for (const auto &n : normals) {
                consider({n[1], -n[0]});
                consider({-n[1], n[0]});
            }
        } else {
            for (std::size_t i = 0; i < normals.size(); ++i)
                for (std::size_t j = i + 1; j < normals.size(); ++j) {
                    const IVec c = cross(normals[i], normals[j]);
                    consider(c);
                    consider({-c[0], -c[1], -c[2]});
                }
        }
        std::vector<IVec> rays(cand.begin(), cand.end());
        if (rank_of(rays) < d)
            continue;
        if (static_cast<int>(rays.size()) == d) {
            fan.cones.push_back({rays});
            continue;
        }
        // d = 3: order the rays around the cone and triangulate from one ray.
        double cx = 0, cy = 0, cz = 0;
        for (const auto &r : rays) {
            const double n = std::sqrt(static_cast<double>(dot(r, r)));
            cx += r[0] / n;
            cy += r[1] / n;
            cz += r[2] / n;
        }
        auto as_d = [](const IVec &r) { return std::array<double, 3>{double(r[0]), double(r[1]), double(r[2])}; };
        const std::array<double, 3> c{cx, cy, cz};
        const auto r0 = as_d(rays[0]);
        const double cc = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
        const double t = (r0[0] * c[0] + r0[1] * c[1] + r0[2] * c[2]) / cc;
        const std::array<double, 3> p1{r0[0] - t * c[0], r0[1] - t * c[1], r0[2] - t * c[2]};
        const std::array<double, 3> p2{c[1] * p1[2] - c[2] * p1[1], c[2] * p1[0] - c[0] * p1[2],
                                       c[0] * p1[1] - c[1] * p1[0]};
        auto angle = [&](const IVec &r) {
            const auto x = as_d(r);
            return std::atan2(x[0] * p2[0] + x[1] * p2[1] + x[2] * p2[2], x[0] * p1[0] + x[1] * p1[1] + x[2] * p1[2]);
        };
        std::sort(rays.begin(), rays.end(), [&](const IVec &a2, const IVec &b2) { return angle(a2) < angle(b2); });
        for (std::size_t k = 1; k + 1 < rays.size(); ++k)
            fan.cones.push_back({{rays[0], rays[k], rays[k + 1]}});
    }
    fan.canonicalize();
    return fan;
}

Fan stellar_subdivide(const Fan &fan, const IVec &v) {
    if (static_cast<int>(v.size()) != fan.dim || is_zero_vec(v) ||
        std::any_of(v.begin(), v.end(), [](long x) { return x < 0; }))
        throw AlgebraError("vector not in the support of the fan");
    Fan out;
    out.dim = fan.dim;
    bool inside = false;
    for (const auto &c : fan.cones) {
        const auto lam = c.coordinates(v);
        if (!lam) {
            out.cones.push_back(c);
            continue;
        }
        inside = true;
        if (std::find(c.gens.begin(), c.gens.end(), v) != c.gens.end()) {
            out.cones.push_back(c);
            continue;
        }
        for (std::size_t r = 0; r < c.gens.size(); ++r)
            if ((*lam)[r] > 0) {
                Cone n = c;
                n.gens[r] = v;
                out.cones.push_back(n);
            }
    }
    if (!inside)
        throw AlgebraError("vector not in the support of the fan");
    out.canonicalize();
    return out;
}

Fan regularize(const Fan &fan, int cap) {
    Fan cur = fan;
    cur.canonicalize();
    int steps = 0;
    for (;;) {
        auto it = std::find_if(cur.cones.begin(), cur.cones.end(), [](const Cone &c) { return !c.regular(); });
        if (it == cur.cones.end())
            return cur;
        if (steps++ >= cap)
            throw RegularizationError("regularization exceeded " + std::to_string(cap) + " subdivisions", cur);
        cur = stellar_subdivide(cur, parallelepiped_point(*it));
    }
}

// ---- charts ---------------------------------------------------------------------

std::map<std::string, MultiPoly> MonomialMap::substitution() const {
    std::map<std::string, MultiPoly> subs;
    for (std::size_t i = 0; i < ambient.size(); ++i) {
        Exponent e;
        for (const auto &g : gens)
            e.push_back(static_cast<std::uint32_t>(g[i]));
        subs[ambient[i]] = MultiPoly::monomial(chart, e, Rat(1));
    }
    return subs;
}

MultiPoly MonomialMap::pullback(const MultiPoly &p) const {
    return p.compact().substitute(substitution()).compact().with_variables(chart);
}

MonomialMap chart_map(const Cone &cone, const std::vector<std::string> &ambient) {
    if (cone.gens.size() != ambient.size())
        throw AlgebraError("chart cone dimension does not match the ambient space");
    if (!cone.regular())
        throw AlgebraError("chart needs a regular cone (|det| = " + std::to_string(std::labs(cone.det())) + ")");
    return {cone.gens, ambient, chart_names(static_cast<int>(ambient.size()))};
}

std::vector<StrictTransform> strict_transform(const Embedding &emb, const MonomialMap &map) {
    std::vector<StrictTransform> out;
    for (const auto &rel : emb.relations) {
        const MultiPoly p = map.pullback(rel);
        if (p.is_zero())
            throw AlgebraError("zero relation");
        Exponent lo(map.chart.size(), 0);
        bool first = true;
        for (const auto &[e, c] : p.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i)
                lo[i] = first ? e[i] : std::min(lo[i], e[i]);
            first = false;
        }
        MultiPoly cof(map.chart);
        for (const auto &[e, c] : p.terms()) {
            Exponent d = e;
            for (std::size_t i = 0; i < d.size(); ++i)
                d[i] -= lo[i];
            cof.add_term(d, c);
        }
        out.push_back({cof, MultiPoly::monomial(map.chart, lo, Rat(1))});
    }
    return out;
}

ChartSurface chart_surface(const std::vector<StrictTransform> &st, const std::vector<std::string> &preferred) {
    ChartSurface cs;
    std::vector<std::string> vars;
    if (!st.empty())
        vars = st.front().cofactor.variables();
    std::vector<std::string> order = preferred;
    for (const auto &v : vars)
        if (std::find(order.begin(), order.end(), v) == order.end())
            order.push_back(v);
    for (const auto &t : st) {
        const MultiPoly eq = t.cofactor.substitute(cs.solved).compact();
        if (eq.is_zero()) {
            cs.certificate = "undecided";
            return cs;
        }
        if (eq.is_constant()) {
            cs.certificate = "empty";
            return cs;
        }
        std::optional<std::string> z;
        for (const auto &v : order)
            if (!cs.solved.count(v) && linear_with_constant(eq, v)) {
                z = v;
                break;
            }
        if (!z) {
            if (&t != &st.back() || !euler_certified(eq)) {
                cs.certificate = "undecided";
                return cs;
            }
            cs.residual = eq;
            break;
        }
        const MultiPoly sol = solve_linear(eq, *z);
        for (auto &[name, expr] : cs.solved)
            expr = expr.substitute({{*z, sol}}).compact();
        cs.solved[*z] = sol;
    }
    cs.certificate = cs.residual.is_zero() ? "graph" : "euler";
    for (const auto &v : vars)
        if (!cs.solved.count(v))
            cs.coordinates.push_back(v);
    return cs;
}

MultiPoly restrict_total(const MultiPoly &p, const MonomialMap &map, const ChartSurface &surface) {
    MultiPoly q = map.pullback(p).substitute(surface.solved).compact();
    return surface.coordinates.empty() ? q : q.with_variables(surface.coordinates);
}

bool ChartReport::ok() const {
    if (certificate == "undecided" || certificate == "irregular")
        return false;
    if (!contains_ray || certificate == "empty")
        return true;
    if (divisor.is_constant() && transversal)
        return true;
    return transversal && std::all_of(orders.begin(), orders.end(),
                                      [](const ElementOrder &o) { return o.order && *o.order == o.expected; });
}

bool ResolutionReport::ok() const {
    return regular && ray_present &&
           std::all_of(charts.begin(), charts.end(), [](const ChartReport &c) { return c.ok(); });
}

std::string smooth_certificate(const MultiPoly &eq) {
    const MultiPoly c = eq.compact();
    if (c.is_zero())
        return "";
    if (c.is_constant())
        return "empty";
    for (const auto &z : c.variables())
        if (linear_with_constant(c, z))
            return "graph";
    return euler_certified(c) ? "euler" : "";
}

namespace {

// E = E' restricted to the strict transform: its equation, transversality
// and the order of each generator along it.
void divisor_check(ChartReport &cr, const MonomialMap &map, const ChartSurface &surface, const std::string &ze,
                   const std::vector<const GenElement *> &elems) {
    const bool eliminated = surface.solved.count(ze) > 0;
    if (eliminated) {
        if (!surface.residual.is_zero())
            return;
        // E = {phi = 0} in the remaining coordinates.
        cr.divisor = surface.solved.at(ze);
        const std::string cert = smooth_certificate(cr.divisor);
        cr.transversal = !cert.empty();
        if (cert == "empty" || !cr.transversal)
            return;
        for (const auto *e : elems)
            cr.orders.push_back({e->name, *e->value,
                                 order_along(restrict_total(MultiPoly::variable(y_name(e->name)), map, surface),
                                             cr.divisor)});
        return;
    }
    // E = {ze = 0} on the surface, cut by the residual equation if any.
    cr.divisor = MultiPoly::variable(ze);
    MultiPoly cut;
    if (!surface.residual.is_zero()) {
        cut = surface.residual.substitute({{ze, MultiPoly::constant(Rat(0))}}).compact();
        const std::string cert = smooth_certificate(cut);
        if (cert == "empty") {
            cr.transversal = true;
            return;
        }
        cr.transversal = !cert.empty();
        if (!cr.transversal)
            return;
    } else {
        cr.transversal = true;
    }
    for (const auto *e : elems) {
        ElementOrder o{e->name, *e->value, std::nullopt};
        const MultiPoly r = restrict_total(MultiPoly::variable(y_name(e->name)), map, surface);
        const auto parts = r.coefficients_in(ze);
        std::size_t k = 0;
        while (k < parts.size() && parts[k].is_zero())
            ++k;
        if (k < parts.size()) {
            const MultiPoly q0 = parts[k].compact();
            // q0 must not vanish identically on E.
            if (cut.is_zero() || (q0.size() == 1 && cut.constant_term() != 0))
                o.order = static_cast<long>(k);
        }
        cr.orders.push_back(o);
    }
}

} // namespace

ResolutionReport verify_resolution(const Embedding &emb, const Fan &fan, const IVec &v, const GenSeq &gs) {
    ResolutionReport rep;
    rep.ray_present = fan.has_ray(v);
    const auto elems = embedded_elements(gs);
    for (const auto &cone : fan.cones) {
        ChartReport cr;
        cr.cone = cone;
        if (!cone.regular()) {
            rep.regular = false;
            cr.certificate = "irregular";
            rep.charts.push_back(cr);
            continue;
        }
        const MonomialMap map = chart_map(cone, emb.names);
        cr.strict = strict_transform(emb, map);
        const auto pos = std::find(cone.gens.begin(), cone.gens.end(), v);
        cr.contains_ray = pos != cone.gens.end();
        std::vector<std::string> preferred;
        std::string ze;
        if (cr.contains_ray) {
            ze = map.chart[static_cast<std::size_t>(pos - cone.gens.begin())];
            preferred.push_back(ze);
        }
        const ChartSurface surface = chart_surface(cr.strict, preferred);
        cr.certificate = surface.certificate;
        if (cr.contains_ray && (surface.certificate == "graph" || surface.certificate == "euler"))
            divisor_check(cr, map, surface, ze, elems);
        rep.charts.push_back(cr);
    }
    return rep;
}

MultiPoly initial_form_at(const MultiPoly &p, const IVec &w) { return p.initial_part(std::span<const long>(w)); }

std::vector<NondegeneracyEntry> check_nondegeneracy(const Embedding &emb, const IVec &alpha) {
    std::vector<NondegeneracyEntry> out;
    for (const auto &rel : emb.relations) {
        NondegeneracyEntry e;
        e.relation = rel.with_variables(emb.names);
        e.initial = initial_form_at(e.relation, alpha);
        e.binomial = e.initial.size() == 2;
        Rat s(0);
        for (const auto &[x, c] : e.initial.terms())
            s += c;
        e.vanishes = s == 0;
        out.push_back(e);
    }
    return out;
}

ToricPipeline toric_pipeline(const GenSeq &gs, int cap) {
    ToricPipeline tp;
    tp.embedding = build_embedding(gs);
    tp.weight = weight_vector(gs);
    const IVec v = primitive(tp.weight);
    tp.exact_dual = tp.embedding.dim() <= 3;
    tp.dual = tp.exact_dual ? dual_fan_refinement(tp.embedding) : orthant_fan(tp.embedding.dim());
    tp.fan = regularize(stellar_subdivide(tp.dual, v), cap);
    if (!tp.exact_dual) {
        // Compatibility a posteriori: initial forms constant inside each cone.
        for (const auto &c : tp.fan.cones) {
            IVec center(c.gens.front().size(), 0);
            for (const auto &g : c.gens)
                for (std::size_t i = 0; i < g.size(); ++i)
                    center[i] += g[i];
            bool same = true;
            for (const auto &rel : tp.embedding.relations) {
                const MultiPoly in = initial_form_at(rel, center);
                for (const auto &g : c.gens) {
                    IVec w = center;
                    for (std::size_t i = 0; i < g.size(); ++i)
                        w[i] += g[i];
                    same = same && initial_form_at(rel, w) == in;
                }
            }
            if (!same)
                tp.incompatible.push_back(c);
        }
    }
    tp.report = verify_resolution(tp.embedding, tp.fan, v, gs);
    return tp;
}

} // namespace valjet
