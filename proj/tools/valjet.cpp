#include "valjet/toric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace valjet;
using nlohmann::ordered_json;

namespace {

struct Options {
    std::string f, h, param;
    long p = 0;
    int m = -1;
    int trials = 3;
    bool exact = false;
    std::uint64_t seed = 1;
    bool pretty = false;
    bool toric = false;
};

struct UsageError : AlgebraError {
    using AlgebraError::AlgebraError;
};

std::string digest(const std::string &text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

ordered_json rat_json(const Rat &r) { return to_string(r); }

std::string read_input(const std::string &path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw UsageError("cannot read " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

BranchParam param_from_json(const std::string &text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception &e) {
        throw UsageError(std::string("invalid BranchParam JSON: ") + e.what());
    }
    BranchParam param;
    try {
        param.n = j.at("n").get<int>();
        for (const auto &term : j.at("x1")) {
            const auto &c = term.at("c");
            const Rat value = c.is_string() ? parse_rat(c.get<std::string>()) : Rat(c.get<long>());
            param.x1_terms.emplace_back(term.at("k").get<int>(), value);
        }
        param.truncation = j.value("truncation", param.x1_terms.empty() ? 0 : param.x1_terms.back().first);
    } catch (const ordered_json::exception &e) {
        throw UsageError(std::string("invalid BranchParam JSON: ") + e.what());
    }
    if (param.n < 1)
        throw UsageError("BranchParam n must be positive");
    for (std::size_t i = 1; i < param.x1_terms.size(); ++i)
        if (param.x1_terms[i].first <= param.x1_terms[i - 1].first)
            throw UsageError("BranchParam exponents must increase");
    // Listed terms are taken as the complete series.
    param.closed_form = true;
    param.truncation = std::max(param.truncation, param.x1_terms.empty() ? 0 : param.x1_terms.back().first);
    return param;
}

ordered_json param_json(const BranchParam &param) {
    ordered_json terms = ordered_json::array();
    for (const auto &[k, c] : param.x1_terms)
        terms.push_back({{"k", k}, {"c", rat_json(c)}});
    return {{"n", param.n}, {"x1", terms}, {"truncation", param.truncation}};
}

/// The branch named by --f or --param.
struct Branch {
    BranchParam param;
    std::optional<MultiPoly> curve;
    std::unique_ptr<ContactProfile> profile;
};

Branch load_branch(const Options &o) {
    if (o.f.empty() == o.param.empty())
        throw UsageError("exactly one of --f and --param is required");
    Branch b;
    if (!o.f.empty()) {
        b.curve = parse_poly(o.f, {"x0", "x1"});
        b.param = newton_puiseux(*b.curve, 64);
        b.profile = std::make_unique<ContactProfile>(b.param, *b.curve);
    } else {
        b.param = param_from_json(read_input(o.param));
        b.profile = std::make_unique<ContactProfile>(b.param);
    }
    return b;
}

MultiPoly require_h(const Options &o) {
    if (o.h.empty())
        throw UsageError("--h is required");
    return parse_poly(o.h, {"x0", "x1"});
}

ordered_json semigroup_json(const SemigroupData &sg) {
    return {{"g", sg.g},           {"beta_bar", sg.beta_bar}, {"e", sg.e},
            {"beta", sg.beta},     {"n", sg.n_seq},           {"m", sg.m_seq},
            {"conductor", sg.conductor()}};
}

ordered_json genseq_json(const GenSeq &gs, const SemigroupData &sg) {
    ordered_json elements = ordered_json::array();
    for (const auto &e : gs.elements) {
        ordered_json el{{"name", e.name}, {"poly", render_poly(e.poly)}};
        el["value"] = e.value ? ordered_json(*e.value) : ordered_json(nullptr);
        el["expr"] = render_poly(e.expr);
        elements.push_back(el);
    }
    ordered_json log = ordered_json::array();
    for (const auto &s : gs.log)
        log.push_back({{"element", s.element},
                       {"mu", s.mu},
                       {"l", s.l},
                       {"claim", s.claim},
                       {"Qprime", render_poly(s.q_prime)},
                       {"Q", render_poly(s.q_eval)}});
    std::vector<long> expected;
    for (int i = 2; i <= sg.g; ++i)
        expected.push_back(sg.e[static_cast<std::size_t>(i - 1)] * sg.beta_bar[static_cast<std::size_t>(i)] - 1);
    ordered_json out{{"elements", elements},
                     {"log", log},
                     {"l_history", gs.l_history},
                     {"mu_settled", gs.mu_settled},
                     {"expected_mu", expected}};
    if (gs.divisorial)
        out["p"] = gs.p;
    return out;
}

ordered_json cone_json(const Cone &c) { return c.gens; }

ordered_json fan_json(const Fan &fan) {
    ordered_json cones = ordered_json::array();
    for (const auto &c : fan.cones)
        cones.push_back(cone_json(c));
    return {{"dim", fan.dim}, {"cones", cones}};
}

ordered_json toric_json(const ToricPipeline &tp) {
    ordered_json relations = ordered_json::array();
    for (const auto &r : tp.embedding.relations)
        relations.push_back(render_poly(r));
    ordered_json charts = ordered_json::array();
    for (const auto &cr : tp.report.charts) {
        const auto map = chart_map(cr.cone, tp.embedding.names);
        ordered_json subst = ordered_json::object();
        for (const auto &name : tp.embedding.names)
            subst[name] = render_poly(map.substitution().at(name));
        ordered_json strict = ordered_json::array();
        for (const auto &st : cr.strict)
            strict.push_back({{"factor", render_poly(st.factor)}, {"cofactor", render_poly(st.cofactor)}});
        ordered_json orders = ordered_json::array();
        for (const auto &o : cr.orders)
            orders.push_back({{"name", o.name},
                              {"expected", o.expected},
                              {"order", o.order ? ordered_json(*o.order) : ordered_json(nullptr)}});
        ordered_json entry{{"cone", cone_json(cr.cone)},
                           {"map", subst},
                           {"strict", strict},
                           {"certificate", cr.certificate},
                           {"contains_ray", cr.contains_ray}};
        if (cr.contains_ray) {
            entry["divisor"] = render_poly(cr.divisor);
            entry["transversal"] = cr.transversal;
            entry["orders"] = orders;
        }
        entry["ok"] = cr.ok();
        charts.push_back(entry);
    }
    ordered_json incompatible = ordered_json::array();
    for (const auto &c : tp.incompatible)
        incompatible.push_back(cone_json(c));
    ordered_json nondeg = ordered_json::array();
    for (const auto &e : check_nondegeneracy(tp.embedding, tp.weight))
        nondeg.push_back({{"relation", render_poly(e.relation)},
                          {"initial", render_poly(e.initial)},
                          {"binomial", e.binomial},
                          {"vanishes", e.vanishes}});
    return {{"embedding", {{"variables", tp.embedding.names}, {"relations", relations}}},
            {"weight", tp.weight},
            {"exact_dual_fan", tp.exact_dual},
            {"dual_fan", fan_json(tp.dual)},
            {"fan", fan_json(tp.fan)},
            {"incompatible_cones", incompatible},
            {"nondegeneracy", nondeg},
            {"report",
             {{"regular", tp.report.regular},
              {"ray_present", tp.report.ray_present},
              {"ok", tp.report.ok()},
              {"charts", charts}}}};
}

ordered_json cmd_semigroup(const Options &o) {
    auto b = load_branch(o);
    return {{"param", param_json(b.param)}, {"semigroup", semigroup_json(b.profile->semigroup())}};
}

ordered_json cmd_jets(const Options &o) {
    if (o.f.empty())
        throw UsageError("--f is required");
    if (o.m < 0)
        throw UsageError("--m is required");
    const auto jets = expand_jets(parse_poly(o.f, {"x0", "x1"}), o.m);
    ordered_json F = ordered_json::array();
    for (const auto &eq : jets.F)
        F.push_back(render_poly(eq));
    return {{"f", render_poly(jets.f)}, {"m", jets.level}, {"F", F}};
}

ordered_json cmd_nu(const Options &o) {
    auto b = load_branch(o);
    const auto r = nu_C(require_h(o), *b.profile);
    const std::string witness = render_poly(r.witness);
    return {{"value", r.value ? ordered_json(*r.value) : ordered_json(nullptr)},
            {"kappa", r.kappa},
            {"level", r.level_used},
            {"tail", r.tail},
            {"witness", witness},
            {"witness_digest", digest(witness)}};
}

ordered_json cmd_initial_form(const Options &o) {
    auto b = load_branch(o);
    const auto r = initial_form(require_h(o), *b.profile);
    return {{"initial", render_poly(r.P)}, {"value", r.value}};
}

ordered_json cmd_nu_e(const Options &o) {
    auto b = load_branch(o);
    if (o.p <= 0)
        throw UsageError("--p is required");
    return {{"p", o.p}, {"value", nu_E(require_h(o), *b.profile, o.p)}};
}

ordered_json cmd_components(const Options &o) {
    auto b = load_branch(o);
    if (o.m < 0)
        throw UsageError("--m is required");
    ordered_json list = ordered_json::array();
    for (const auto &d : classify_components(b.profile->semigroup(), o.m))
        list.push_back({{"label", d.label()},
                        {"m", d.m},
                        {"kappa", d.kappa},
                        {"j", d.j},
                        {"contact_order", rat_json(d.contact_order)},
                        {"boundary", d.boundary}});
    return {{"m", o.m}, {"components", list}};
}

GenSeq build_genseq(const Options &o, Branch &b, bool divisorial) {
    if (divisorial) {
        if (o.p <= 0)
            throw UsageError("--p is required");
        return run_genseq_divisorial(*b.profile, o.p);
    }
    return run_genseq(*b.profile);
}

ordered_json genseq_like(const Options &o, bool divisorial, bool toric) {
    auto b = load_branch(o);
    const auto gs = build_genseq(o, b, divisorial);
    ordered_json out{{"semigroup", semigroup_json(b.profile->semigroup())},
                     {"genseq", genseq_json(gs, b.profile->semigroup())}};
    if (toric)
        out["toric"] = toric_json(toric_pipeline(gs));
    return out;
}

ordered_json cmd_verify(const Options &o, bool &ok) {
    auto b = load_branch(o);
    const auto gs = build_genseq(o, b, o.p > 0);
    const auto report = verify_genseq(gs, *b.profile, std::max(1, o.trials) * 4, o.seed);
    ok = report.ok;
    ordered_json out{{"genseq", genseq_json(gs, b.profile->semigroup())},
                     {"ok", report.ok},
                     {"checks", report.lines}};
    if (o.toric) {
        const auto tp = toric_pipeline(gs);
        out["toric_ok"] = tp.report.ok();
        ok = ok && tp.report.ok();
    }
    return out;
}

void print_pretty(std::ostream &out, const ordered_json &j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const auto scalar = [](const ordered_json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    const auto flat = [](const ordered_json &v) {
        if (!v.is_array())
            return false;
        for (const auto &x : v)
            if (x.is_object())
                return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            if (v.is_structured() && !flat(v)) {
                out << pad << k << ":\n";
                print_pretty(out, v, indent + 2);
            } else {
                out << pad << k << ": " << (v.is_array() ? v.dump() : scalar(v)) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto &v : j) {
            if (v.is_object()) {
                out << pad << "-\n";
                print_pretty(out, v, indent + 2);
            } else {
                out << pad << "- " << scalar(v) << "\n";
            }
        }
    } else {
        out << pad << scalar(j) << "\n";
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"valjet: jet schemes, valuations and generating sequences of plane branches"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Options o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"semigroup", "semigroup of the branch"},
        {"jets", "jet equations F^(0..m) of --f"},
        {"nu", "curve valuation of --h"},
        {"initial-form", "initial form of --h"},
        {"nu-e", "divisorial valuation of --h at contact --p"},
        {"components", "irreducible components of the jet scheme at level --m"},
        {"genseq", "generating sequence of the curve valuation"},
        {"divisorial", "generating sequence of the divisorial valuation at contact --p"},
        {"toric", "toric embedding and resolution"},
        {"verify", "cross-check a generating sequence"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->add_option("--f", o.f, "plane curve in x0, x1");
        sub->add_option("--h", o.h, "polynomial in x0, x1");
        sub->add_option("--param", o.param, "BranchParam JSON file, - for stdin");
        sub->add_option("--p", o.p, "contact order of the divisorial valuation");
        sub->add_option("--m", o.m, "jet level");
        sub->add_option("--trials", o.trials, "specializations per check")->check(CLI::PositiveNumber);
        sub->add_flag("--exact", o.exact, "exact zero tests");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_flag("--pretty", o.pretty, "human-readable output");
        sub->add_flag("--toric", o.toric, "append the toric resolution");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    ordered_json doc{{"schema", "valjet/1"}, {"command", command}, {"seed", o.seed}};
    doc["zero_test"] = o.exact ? ordered_json{{"mode", "exact"}}
                               : ordered_json{{"mode", "probabilistic"}, {"trials", o.trials}};
    if (!o.f.empty())
        doc["f"] = o.f;
    if (!o.h.empty())
        doc["h"] = o.h;
    int code = 0;
    try {
        ordered_json result;
        if (command == "semigroup")
            result = cmd_semigroup(o);
        else if (command == "jets")
            result = cmd_jets(o);
        else if (command == "nu")
            result = cmd_nu(o);
        else if (command == "initial-form")
            result = cmd_initial_form(o);
        else if (command == "nu-e")
            result = cmd_nu_e(o);
        else if (command == "components")
            result = cmd_components(o);
        else if (command == "genseq")
            result = genseq_like(o, false, o.toric);
        else if (command == "divisorial")
            result = genseq_like(o, true, o.toric);
        else if (command == "toric")
            result = genseq_like(o, o.p > 0, true);
        else {
            bool ok = true;
            result = cmd_verify(o, ok);
            code = ok ? 0 : 1;
        }
        doc["result"] = result;
    } catch (const AlgebraError &e) {
        doc["error"] = {{"kind", "domain"}, {"message", e.what()}};
        code = 2;
    } catch (const std::exception &e) {
        doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
        code = 1;
    }
    if (o.pretty)
        print_pretty(std::cout, doc, 0);
    else
        std::cout << doc.dump() << "\n";
    return code;
}
