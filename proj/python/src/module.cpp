#include "valjet/toric.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace valjet;

namespace {

MultiPoly plane(const std::string &s) { return parse_poly(s, {"x0", "x1"}); }

ContactProfile profile_of(const std::string &f) { return ContactProfile(newton_puiseux(plane(f), 64), plane(f)); }

py::dict semigroup_dict(const SemigroupData &sg) {
    py::dict d;
    d["g"] = sg.g;
    d["beta_bar"] = sg.beta_bar;
    d["e"] = sg.e;
    d["beta"] = sg.beta;
    d["conductor"] = sg.conductor();
    return d;
}

py::dict genseq_dict(const GenSeq &gs) {
    py::list elements, log;
    for (const auto &e : gs.elements) {
        py::dict d;
        d["name"] = e.name;
        d["poly"] = render_poly(e.poly);
        d["value"] = e.value ? py::object(py::int_(*e.value)) : py::object(py::none());
        elements.append(d);
    }
    for (const auto &s : gs.log) {
        py::dict d;
        d["element"] = s.element;
        d["mu"] = s.mu;
        d["l"] = s.l;
        d["claim"] = s.claim;
        d["Qprime"] = render_poly(s.q_prime);
        log.append(d);
    }
    py::dict out;
    out["elements"] = elements;
    out["log"] = log;
    out["l_history"] = gs.l_history;
    out["mu_settled"] = gs.mu_settled;
    return out;
}

py::dict toric_dict(const GenSeq &gs) {
    const auto tp = toric_pipeline(gs);
    std::vector<std::string> relations;
    for (const auto &r : tp.embedding.relations)
        relations.push_back(render_poly(r));
    std::vector<std::vector<IVec>> cones;
    for (const auto &c : tp.fan.cones)
        cones.push_back(c.gens);
    py::dict d;
    d["variables"] = tp.embedding.names;
    d["relations"] = relations;
    d["weight"] = tp.weight;
    d["cones"] = cones;
    d["ok"] = tp.report.ok();
    return d;
}

} // namespace

PYBIND11_MODULE(valjet, m) {
    m.doc() = "Jet schemes, valuations and generating sequences of plane branches";
    py::register_exception<AlgebraError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    m.def("semigroup", [](const std::string &f) { return semigroup_dict(profile_of(f).semigroup()); }, py::arg("f"),
          "Semigroup data of the branch f(x0, x1) = 0.");
    m.def(
        "jets",
        [](const std::string &f, int level) {
            std::vector<std::string> out;
            for (const auto &eq : expand_jets(plane(f), level).F)
                out.push_back(render_poly(eq));
            return out;
        },
        py::arg("f"), py::arg("m"), "Jet equations F^(0..m); jet variables are named z#i.");
    m.def(
        "nu",
        [](const std::string &f, const std::string &h) -> std::optional<long> {
            auto profile = profile_of(f);
            return nu_C(plane(h), profile).value;
        },
        py::arg("f"), py::arg("h"), "Curve valuation nu_C(h); None when h vanishes on the branch.");
    m.def(
        "initial_form",
        [](const std::string &f, const std::string &h) {
            auto profile = profile_of(f);
            const auto r = initial_form(plane(h), profile);
            return py::make_tuple(render_poly(r.P), r.value);
        },
        py::arg("f"), py::arg("h"), "(initial form, value) of h.");
    m.def(
        "nu_e",
        [](const std::string &f, const std::string &h, long p) {
            auto profile = profile_of(f);
            return nu_E(plane(h), profile, p);
        },
        py::arg("f"), py::arg("h"), py::arg("p"), "Divisorial valuation at contact order p.");
    m.def(
        "genseq",
        [](const std::string &f) {
            auto profile = profile_of(f);
            return genseq_dict(run_genseq(profile));
        },
        py::arg("f"), "Generating sequence of nu_C with its (mu, l, Q') log.");
    m.def(
        "divisorial",
        [](const std::string &f, long p) {
            auto profile = profile_of(f);
            return genseq_dict(run_genseq_divisorial(profile, p));
        },
        py::arg("f"), py::arg("p"), "Generating sequence of nu_E at contact order p.");
    m.def(
        "toric",
        [](const std::string &f, std::optional<long> p) {
            auto profile = profile_of(f);
            return toric_dict(p ? run_genseq_divisorial(profile, *p) : run_genseq(profile));
        },
        py::arg("f"), py::arg("p") = py::none(), "Toric embedding, regular fan and verification status.");
    m.def(
        "approximate_root",
        [](const std::string &f, long e) { return render_poly(approximate_root(plane(f), e)); }, py::arg("f"),
        py::arg("e"), "Approximate e-th root of f, monic in x1.");
}
