#include "valjet/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace valjet {

Rat make_rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(const std::string &text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw AlgebraError("malformed rational \"" + text + "\"");
    if (r.get_den() == 0)
        throw AlgebraError("zero denominator in \"" + text + "\"");
    r.canonicalize();
    return r;
}

std::string to_string(const Rat &r) { return r.get_str(); }

bool GrlexGreater::operator()(const Exponent &a, const Exponent &b) const {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db)
        return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

MultiPoly MultiPoly::constant(const Rat &c, std::vector<std::string> variables) {
    MultiPoly p(std::move(variables));
    p.add_term(Exponent(p.vars_.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const std::string &name) { return variable(name, {name}); }

MultiPoly MultiPoly::variable(const std::string &name, std::vector<std::string> variables) {
    MultiPoly p(std::move(variables));
    auto idx = p.index_of(name);
    if (!idx) {
        p.vars_.push_back(name);
        idx = p.vars_.size() - 1;
    }
    Exponent e(p.vars_.size(), 0);
    e[*idx] = 1;
    p.add_term(e, Rat(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> variables, Exponent exponent, Rat coeff) {
    MultiPoly p(std::move(variables));
    if (exponent.size() != p.vars_.size())
        throw AlgebraError("exponent length does not match variable count");
    p.add_term(exponent, coeff);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const auto &e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

std::optional<std::size_t> MultiPoly::index_of(const std::string &name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

std::vector<std::string> MultiPoly::merge_universe(const std::vector<std::string> &a,
                                                   const std::vector<std::string> &b) {
    std::vector<std::string> out = a;
    for (const auto &v : b)
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    return out;
}

MultiPoly MultiPoly::with_variables(const std::vector<std::string> &variables) const {
    if (variables == vars_)
        return *this;
    std::vector<std::optional<std::size_t>> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(variables.begin(), variables.end(), vars_[i]);
        if (it != variables.end())
            map[i] = static_cast<std::size_t>(it - variables.begin());
    }
    MultiPoly out(variables);
    for (const auto &[e, c] : terms_) {
        Exponent ne(variables.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!map[i])
                throw AlgebraError("variable " + vars_[i] + " missing from target universe");
            ne[*map[i]] = e[i];
        }
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

MultiPoly MultiPoly::compact() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto &[e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            used[i] = used[i] || e[i] != 0;
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (used[i])
            keep.push_back(vars_[i]);
    return with_variables(keep);
}

void MultiPoly::add_term(const Exponent &e, const Rat &c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &other) {
    if (other.vars_ != vars_) {
        auto u = merge_universe(vars_, other.vars_);
        *this = with_variables(u);
        auto o = other.with_variables(u);
        for (const auto &[e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    for (const auto &[e, c] : other.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly &MultiPoly::operator-=(const MultiPoly &other) { return *this += -other; }

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto &[e, c] : out.terms_)
        c = -c;
    return out;
}

MultiPoly &MultiPoly::operator*=(const Rat &c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, v] : terms_)
        v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
    if (a.vars_ != b.vars_) {
        auto u = MultiPoly::merge_universe(a.vars_, b.vars_);
        return a.with_variables(u) * b.with_variables(u);
    }
    MultiPoly out(a.vars_);
    if (a.is_zero() || b.is_zero())
        return out;
    Exponent e(a.vars_.size());
    Rat prod;
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            out.add_term(e, prod);
        }
    }
    return out;
}

MultiPoly &MultiPoly::operator*=(const MultiPoly &other) { return *this = *this * other; }

bool operator==(const MultiPoly &a, const MultiPoly &b) {
    if (a.vars_ == b.vars_)
        return a.terms_ == b.terms_;
    auto u = MultiPoly::merge_universe(a.vars_, b.vars_);
    return a.with_variables(u).terms_ == b.with_variables(u).terms_;
}

MultiPoly MultiPoly::pow(long exponent) const {
    if (exponent < 0)
        throw AlgebraError("negative exponent");
    MultiPoly result = constant(Rat(1), vars_);
    MultiPoly base = *this;
    auto e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1UL)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

std::uint32_t MultiPoly::degree_in(const std::string &name) const {
    auto idx = index_of(name);
    if (!idx)
        return 0;
    std::uint32_t d = 0;
    for (const auto &[e, c] : terms_)
        d = std::max(d, e[*idx]);
    return d;
}

std::uint32_t MultiPoly::total_degree() const {
    if (terms_.empty())
        return 0;
    const auto &e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

std::uint32_t MultiPoly::order() const {
    if (terms_.empty())
        return 0;
    const auto &e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

MultiPoly MultiPoly::homogeneous_part(std::uint32_t degree) const {
    MultiPoly out(vars_);
    for (const auto &[e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), std::uint32_t{0}) == degree)
            out.terms_.emplace(e, c);
    return out;
}

namespace {
long weight_of(const Exponent &e, std::span<const long> weights) {
    long w = 0;
    for (std::size_t i = 0; i < e.size() && i < weights.size(); ++i)
        w += static_cast<long>(e[i]) * weights[i];
    return w;
}
} // namespace

long MultiPoly::weighted_order(std::span<const long> weights) const {
    if (terms_.empty())
        throw AlgebraError("weighted order of the zero polynomial");
    long best = weight_of(terms_.begin()->first, weights);
    for (const auto &[e, c] : terms_)
        best = std::min(best, weight_of(e, weights));
    return best;
}

MultiPoly MultiPoly::initial_part(std::span<const long> weights) const {
    MultiPoly out(vars_);
    if (terms_.empty())
        return out;
    const long w = weighted_order(weights);
    for (const auto &[e, c] : terms_)
        if (weight_of(e, weights) == w)
            out.terms_.emplace(e, c);
    return out;
}

Rat MultiPoly::coefficient(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat MultiPoly::constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }

std::pair<Exponent, Rat> MultiPoly::leading_term() const {
    if (terms_.empty())
        throw AlgebraError("leading term of the zero polynomial");
    return *terms_.begin();
}

MultiPoly MultiPoly::derivative(const std::string &name) const {
    MultiPoly out(vars_);
    auto idx = index_of(name);
    if (!idx)
        return out;
    for (const auto &[e, c] : terms_) {
        if (e[*idx] == 0)
            continue;
        Exponent ne = e;
        --ne[*idx];
        out.add_term(ne, c * Rat(e[*idx]));
    }
    return out;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly> &subs) const {
    // Collect the universe of the result: untouched variables plus everything
    // the substitutes use.
    std::vector<std::string> universe;
    for (const auto &v : vars_)
        if (!subs.count(v))
            universe.push_back(v);
    for (const auto &[name, s] : subs)
        universe = merge_universe(universe, s.variables());

    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    std::vector<std::uint32_t> maxdeg(vars_.size(), 0);
    for (const auto &[e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            maxdeg[i] = std::max(maxdeg[i], e[i]);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = subs.find(vars_[i]);
        MultiPoly base = it == subs.end() ? variable(vars_[i], universe)
                                          : it->second.with_variables(universe);
        powers[i].push_back(constant(Rat(1), universe));
        for (std::uint32_t k = 1; k <= maxdeg[i]; ++k)
            powers[i].push_back(powers[i].back() * base);
    }
    MultiPoly out(universe);
    for (const auto &[e, c] : terms_) {
        MultiPoly term = constant(c, universe);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i])
                term *= powers[i][e[i]];
        out += term;
    }
    return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string &name) const {
    auto idx = index_of(name);
    if (!idx)
        return {*this};
    std::vector<MultiPoly> out(degree_in(name) + 1, MultiPoly(vars_));
    for (const auto &[e, c] : terms_) {
        Exponent ne = e;
        ne[*idx] = 0;
        out[e[*idx]].add_term(ne, c);
    }
    return out;
}

std::string MultiPoly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        const bool is_const = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
        Rat mag = abs(c);
        if (first) {
            if (c < 0)
                os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (is_const || mag != 1) {
            os << mag.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (need_star)
                os << '*';
            os << vars_[i];
            if (e[i] > 1)
                os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

std::string jet_name(const std::string &base, int index) { return base + "#" + std::to_string(index); }

std::optional<std::pair<std::string, int>> split_jet_name(const std::string &name) {
    auto pos = name.find('#');
    if (pos == std::string::npos || pos + 1 >= name.size())
        return std::nullopt;
    return std::make_pair(name.substr(0, pos), std::stoi(name.substr(pos + 1)));
}

std::string display(const MultiPoly &p) {
    std::vector<std::string> pretty;
    for (const auto &v : p.variables()) {
        if (auto j = split_jet_name(v))
            pretty.push_back(j->first + "^(" + std::to_string(j->second) + ")");
        else
            pretty.push_back(v);
    }
    MultiPoly q(pretty);
    for (const auto &[e, c] : p.terms())
        q.add_term(e, c);
    return q.str();
}

namespace {

class Parser {
public:
    Parser(const std::string &text, std::vector<std::string> universe, bool fixed)
        : s_(text), universe_(std::move(universe)), fixed_(fixed) {}

    MultiPoly run() {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("empty expression", pos_);
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p.with_variables(universe_);
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected digits", pos_);
        return s_.substr(start, pos_ - start);
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }
    MultiPoly term() {
        MultiPoly acc = unary();
        while (accept('*'))
            acc *= unary();
        return acc;
    }
    MultiPoly unary() {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }
    MultiPoly power() {
        MultiPoly base = atom();
        if (accept('^')) {
            skip();
            if (pos_ < s_.size() && !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("exponent must be a non-negative integer", pos_);
            const std::size_t at = pos_;
            const std::string d = digits();
            if (d.size() > 6)
                throw ParseError("exponent too large", at);
            base = base.pow(std::stol(d));
        }
        skip();
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
            throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
        return base;
    }
    MultiPoly atom() {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (accept('/')) {
                const std::size_t at = pos_;
                std::string den = digits();
                if (std::all_of(den.begin(), den.end(), [](char ch) { return ch == '0'; }))
                    throw ParseError("zero denominator", at);
                num += "/" + den;
            }
            return MultiPoly::constant(parse_rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (pos_ < s_.size() && s_[pos_] == '#') {
                ++pos_;
                std::size_t dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (dstart == pos_)
                    throw ParseError("expected jet index after '#'", pos_);
                name += "#" + s_.substr(dstart, pos_ - dstart);
            }
            if (std::find(universe_.begin(), universe_.end(), name) == universe_.end()) {
                if (fixed_)
                    throw ParseError("unknown variable \"" + name + "\"", start);
                universe_.push_back(name);
            }
            return MultiPoly::variable(name);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    const std::string &s_;
    std::vector<std::string> universe_;
    bool fixed_;
    std::size_t pos_ = 0;
};

} // namespace

MultiPoly parse_poly(const std::string &text, const std::vector<std::string> &universe) {
    return Parser(text, universe, !universe.empty()).run();
}

std::string render_poly(const MultiPoly &p) { return p.str(); }

} // namespace valjet
