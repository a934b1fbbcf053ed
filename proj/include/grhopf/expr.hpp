// Expression parsing and canonical printing.
//
//   expr   := term (('+'|'-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' uint)*
//   atom   := rational | ident | 'd/d'ident | '[' expr ',' expr ']' | '(' expr ')'
//
// Rationals are written p or p/q. Positions in errors are 1-based character
// offsets; the end of input counts as length + 1.
#ifndef GRHOPF_EXPR_HPP
#define GRHOPF_EXPR_HPP

#include "poly.hpp"
#include "ue.hpp"

#include <cctype>
#include <memory>

namespace grhopf {

struct parse_error : input_error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : input_error(what + " at position " + std::to_string(pos)), position(pos)
    {
    }
};

struct expr_node {
    enum kind_t { number, ident, deriv, add, sub, neg, mul, pow, bracket } kind;
    std::size_t pos = 0;
    rational value;
    std::string name;
    unsigned exponent = 0;
    std::shared_ptr<const expr_node> a, b;
};
using expr_ptr = std::shared_ptr<const expr_node>;

class expr_parser {
public:
    explicit expr_parser(std::string_view src) : s_(src) {}

    expr_ptr parse()
    {
        auto e = expr();
        skip();
        if (i_ < s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, i_ + 1); }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!eat(c)) fail(i_ < s_.size() ? "expected '" + std::string(1, c) + "'" : "unexpected end of input");
    }
    static expr_ptr make(expr_node n) { return std::make_shared<const expr_node>(std::move(n)); }
    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    expr_ptr expr()
    {
        auto e = term();
        for (;;) {
            skip();
            std::size_t at = i_ + 1;
            if (eat('+'))
                e = make({expr_node::add, at, {}, {}, 0, e, term()});
            else if (eat('-'))
                e = make({expr_node::sub, at, {}, {}, 0, e, term()});
            else
                return e;
        }
    }
    expr_ptr term()
    {
        auto e = unary();
        for (;;) {
            skip();
            std::size_t at = i_ + 1;
            if (!eat('*')) return e;
            e = make({expr_node::mul, at, {}, {}, 0, e, unary()});
        }
    }
    expr_ptr unary()
    {
        skip();
        std::size_t at = i_ + 1;
        if (eat('-')) return make({expr_node::neg, at, {}, {}, 0, unary(), nullptr});
        return power();
    }
    expr_ptr power()
    {
        auto e = atom();
        for (;;) {
            skip();
            std::size_t at = i_ + 1;
            if (!eat('^')) return e;
            skip();
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (start == i_) fail("expected a non-negative integer exponent");
            if (i_ - start > 4) throw parse_error("exponent too large", start + 1);
            unsigned k = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, i_ - start))));
            e = make({expr_node::pow, at, {}, {}, k, e, nullptr});
        }
    }
    expr_ptr atom()
    {
        skip();
        if (i_ >= s_.size()) fail("unexpected end of input");
        const std::size_t at = i_ + 1;
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (i_ < s_.size() && s_[i_] == '/' && i_ + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
                ++i_;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            }
            rational v;
            try {
                v = parse_rational(s_.substr(start, i_ - start));
            } catch (const input_error& e) {
                throw parse_error(e.what(), at);
            }
            return make({expr_node::number, at, v, {}, 0, nullptr, nullptr});
        }
        if (ident_start(c)) {
            std::size_t start = i_;
            while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
            std::string name(s_.substr(start, i_ - start));
            // d/dz
            if (name == "d" && i_ + 1 < s_.size() && s_[i_] == '/' && s_[i_ + 1] == 'd') {
                i_ += 2;
                std::size_t vs = i_;
                while (i_ < s_.size() && ident_char(s_[i_])) ++i_;
                if (vs == i_) fail("expected a variable after 'd/d'");
                return make({expr_node::deriv, at, {}, std::string(s_.substr(vs, i_ - vs)), 0, nullptr, nullptr});
            }
            return make({expr_node::ident, at, {}, name, 0, nullptr, nullptr});
        }
        if (eat('(')) {
            auto e = expr();
            expect(')');
            return e;
        }
        if (eat('[')) {
            auto x = expr();
            expect(',');
            auto y = expr();
            expect(']');
            return make({expr_node::bracket, at, {}, {}, 0, x, y});
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

inline expr_ptr parse_expression(std::string_view src) { return expr_parser(src).parse(); }

// Evaluation against a target algebra. Alg provides value type, scalar, ident,
// add, mul, scale and commutator; deriv is optional.
template <class Alg>
typename Alg::value evaluate(const expr_node& n, const Alg& alg)
{
    switch (n.kind) {
    case expr_node::number: return alg.scalar(n.value);
    case expr_node::ident: return alg.ident(n.name, n.pos);
    case expr_node::deriv: return alg.deriv(n.name, n.pos);
    case expr_node::add: return alg.add(evaluate(*n.a, alg), evaluate(*n.b, alg));
    case expr_node::sub: return alg.add(evaluate(*n.a, alg), alg.scale(rational(-1), evaluate(*n.b, alg)));
    case expr_node::neg: return alg.scale(rational(-1), evaluate(*n.a, alg));
    case expr_node::mul: return alg.mul(evaluate(*n.a, alg), evaluate(*n.b, alg));
    case expr_node::pow: {
        auto base = evaluate(*n.a, alg);
        auto r = alg.scalar(rational(1));
        for (unsigned k = 0; k < n.exponent; ++k) r = alg.mul(r, base);
        return r;
    }
    case expr_node::bracket: return alg.commutator(evaluate(*n.a, alg), evaluate(*n.b, alg));
    }
    throw input_error("malformed expression");
}

inline std::string unknown_name(const std::string& what, const std::string& name, const std::vector<std::string>& known)
{
    auto c = closest(name, known);
    return "unknown " + what + " '" + name + "'" + (c.empty() ? std::string{} : " (did you mean '" + c + "'?)");
}

// U(g) as an evaluation target.
struct u_target {
    using value = u_element;
    const enveloping_algebra& U;

    value scalar(const rational& c) const { return U.scalar(c); }
    value ident(const std::string& name, std::size_t pos) const
    {
        auto i = U.lie().find(name);
        if (!i) {
            std::vector<std::string> labels;
            for (const auto& e : U.lie().basis()) labels.push_back(e.label);
            throw parse_error(unknown_name("generator", name, labels), pos);
        }
        return U.gen(*i);
    }
    value deriv(const std::string&, std::size_t pos) const
    {
        throw parse_error("derivations are not elements of U(g)", pos);
    }
    value add(const value& a, const value& b) const { return a + b; }
    value scale(const rational& c, const value& a) const { return c * a; }
    value mul(const value& a, const value& b) const { return U.mul(a, b); }
    value commutator(const value& a, const value& b) const { return U.commutator(a, b); }
};

inline u_element parse_u(const enveloping_algebra& U, std::string_view src)
{
    return evaluate(*parse_expression(src), u_target{U});
}

// A Lie element: an expression whose normal form is linear in the generators.
inline lie_vector parse_lie(const enveloping_algebra& U, std::string_view src)
{
    lie_vector v;
    for (const auto& [w, c] : parse_u(U, src)) {
        if (w.size() != 1) throw input_error("'" + std::string(src) + "' is not a Lie algebra element");
        v.add(static_cast<std::size_t>(w[0]), c);
    }
    return v;
}

// Polynomials in the variables of a ring.
struct series_target {
    using value = series;
    ring_ptr ring;
    truncation trunc;

    value scalar(const rational& c) const { return series::constant(ring, trunc, c); }
    value ident(const std::string& name, std::size_t pos) const
    {
        auto i = ring->find(name);
        if (!i) {
            std::vector<std::string> names;
            for (const auto& v : ring->vars()) names.push_back(v.name);
            throw parse_error(unknown_name("variable", name, names), pos);
        }
        return series::var(ring, trunc, *i);
    }
    value deriv(const std::string&, std::size_t pos) const { throw parse_error("unexpected derivation", pos); }
    value add(const value& a, const value& b) const { return a + b; }
    value scale(const rational& c, const value& a) const { return c * a; }
    value mul(const value& a, const value& b) const { return a * b; }
    value commutator(const value& a, const value& b) const { return a * b - b * a; }
};

inline series parse_series(const ring_ptr& ring, truncation t, std::string_view src)
{
    return evaluate(*parse_expression(src), series_target{ring, t});
}

// ---- printing ----------------------------------------------------------------

inline std::string word_to_string(const lie_algebra& g, const word& w)
{
    if (w.empty()) return "1";
    std::string s;
    std::size_t k = 0;
    while (k < w.size()) {
        std::size_t j = k;
        while (j < w.size() && w[j] == w[k]) ++j;
        if (!s.empty()) s += "*";
        s += g.element(static_cast<std::size_t>(w[k])).label;
        if (j - k > 1) s += "^" + std::to_string(j - k);
        k = j;
    }
    return s;
}

// Descending (length, basis order): "f*e + 2*h" in sl2 with h < f < e.
inline bool print_before(const word& a, const word& b)
{
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
}

template <class Tag>
std::string to_string(const lie_algebra& g, const lincomb<word, rational, Tag>& x)
{
    std::vector<std::pair<word, rational>> terms(x.begin(), x.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return print_before(a.first, b.first); });
    std::string out;
    for (const auto& [w, c] : terms) detail::append_term(out, c, w.empty() ? std::string{} : word_to_string(g, w));
    return out.empty() ? "0" : out;
}

inline std::string to_string(const enveloping_algebra& U, const u_element& x) { return to_string(U.lie(), x); }

inline std::string to_string(const lie_algebra& g, const lie_vector& v)
{
    u_element u;
    for (const auto& [k, c] : v) u.add(word{static_cast<int>(k)}, c);
    return to_string(g, u);
}

template <class Tag>
std::string to_string(const lie_algebra& g, const lincomb<word_pair, rational, Tag>& t)
{
    std::vector<std::pair<word_pair, rational>> terms(t.begin(), t.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.first != b.first.first) return print_before(a.first.first, b.first.first);
        return print_before(a.first.second, b.first.second);
    });
    std::string out;
    for (const auto& [p, c] : terms)
        detail::append_term(out, c, "(" + word_to_string(g, p.first) + " | " + word_to_string(g, p.second) + ")");
    return out.empty() ? "0" : out;
}

inline std::string to_string(const lie_algebra& g, const u_tensor3& t)
{
    std::vector<std::pair<word_triple, rational>> terms(t.begin(), t.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        for (std::size_t k = 0; k < 3; ++k)
            if (a.first[k] != b.first[k]) return print_before(a.first[k], b.first[k]);
        return false;
    });
    std::string out;
    for (const auto& [p, c] : terms)
        detail::append_term(out, c,
                            "(" + word_to_string(g, p[0]) + " | " + word_to_string(g, p[1]) + " | " +
                                word_to_string(g, p[2]) + ")");
    return out.empty() ? "0" : out;
}

}  // namespace grhopf

#endif
