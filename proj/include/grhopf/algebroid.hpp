// Lie-Rinehart pairs over polynomial rings: the enveloping algebroid with
// coefficients on the left, tensors over R, the left bialgebroid, the Hopf
// algebroid of an action, its groupoid and Harish-Chandra versions, and jets.
#ifndef GRHOPF_ALGEBROID_HPP
#define GRHOPF_ALGEBROID_HPP

#include "hc.hpp"

namespace grhopf {

inline constexpr truncation exact{unbounded, unbounded};

// sum_i coeff[i] d/dz_i over the base ring.
struct vector_field {
    std::vector<series> coeff;
    bool operator==(const vector_field&) const = default;
};

// Embeds a base polynomial into a ring whose first variables are the base variables.
inline series embed_base(const series& f, const ring_ptr& target, truncation t)
{
    if (!f.ring()) return series(target, t);
    std::vector<std::size_t> idx(f.ring()->size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return f.embed(target, idx, t);
}

inline series apply(const vector_field& X, const series& f)
{
    if (!f.ring()) return f;
    series out(f.ring(), f.trunc());
    for (std::size_t i = 0; i < X.coeff.size(); ++i) {
        if (X.coeff[i].is_zero()) continue;
        series d = f.derivative(i);
        if (!d.is_zero()) out += embed_base(X.coeff[i], f.ring(), f.trunc()) * d;
    }
    return out;
}

inline vector_field lie_bracket(const vector_field& X, const vector_field& Y)
{
    vector_field Z;
    for (std::size_t i = 0; i < X.coeff.size(); ++i) Z.coeff.push_back(apply(X, Y.coeff[i]) - apply(Y, X.coeff[i]));
    return Z;
}

namespace detail {
// Appends "term" to a sum, turning a leading minus into " - ".
inline void append_signed(std::string& out, const std::string& term)
{
    if (out.empty())
        out = term;
    else if (term[0] == '-')
        out += " - " + term.substr(1);
    else
        out += " + " + term;
}
// coefficient * thing, with a polynomial coefficient.
inline std::string scaled(const series& c, const std::string& thing)
{
    std::string p = c.to_string();
    if (thing.empty()) return p;
    if (p == "1") return thing;
    if (p == "-1") return "-" + thing;
    if (c.terms().size() == 1) return p + "*" + thing;
    return "(" + p + ")*" + thing;
}
}  // namespace detail

inline std::string to_string(const vector_field& X, const poly_ring& R)
{
    std::string out;
    for (std::size_t i = 0; i < X.coeff.size(); ++i)
        if (!X.coeff[i].is_zero()) detail::append_signed(out, detail::scaled(X.coeff[i], "d/d" + R.var(i).name));
    return out.empty() ? "0" : out;
}

// Elements of U(R, L): admissible g-monomials with polynomial coefficients on the left.
using ure_element = lincomb<word, series, struct ure_tag>;
// U (x)_R U and its triple version, both legs as left R-modules: f A (x) B.
using r_tensor = lincomb<word_pair, series, struct r_tensor_tag>;
using r_tensor3 = lincomb<word_triple, series, struct r_tensor3_tag>;

// A letter of a mixed word: a generator or a base monomial.
struct mixed_token {
    int gen = -1;
    exponents mono;
    auto operator<=>(const mixed_token&) const = default;
};
using mixed_word = std::vector<mixed_token>;

class lie_rinehart_pair {
public:
    lie_rinehart_pair(lie_algebra g, ring_ptr base, const std::map<std::string, vector_field>& anchor)
        : g_(std::move(g)), U_(g_), R_(std::move(base))
    {
        for (const auto& e : g_.basis())
            if (e.parity) throw input_error("odd generator '" + e.label + "': actions are supported for even algebras only");
        for (const auto& v : R_->vars()) {
            if (v.formal || v.parity) throw input_error("base variable '" + v.name + "' must be an even polynomial variable");
            if (g_.find(v.name)) throw input_error("base variable '" + v.name + "' clashes with a generator");
        }
        const std::size_t nb = R_->size();
        anchor_.assign(g_.dim(), vector_field{std::vector<series>(nb, series(R_, exact))});
        for (const auto& [label, X] : anchor) {
            if (X.coeff.size() != nb) throw input_error("anchor of '" + label + "' has the wrong number of components");
            auto& slot = anchor_[g_.index_of(label)];
            for (std::size_t i = 0; i < nb; ++i) slot.coeff[i] = X.coeff[i].with_trunc(exact);
        }
        for (std::size_t i = 0; i < g_.dim(); ++i)
            for (std::size_t j = i + 1; j < g_.dim(); ++j) {
                vector_field lhs{std::vector<series>(nb, series(R_, exact))};
                for (const auto& [k, c] : g_.structure(i, j))
                    for (std::size_t v = 0; v < nb; ++v) lhs.coeff[v] += c * anchor_[k].coeff[v];
                vector_field rhs = lie_bracket(anchor_[i], anchor_[j]);
                if (!(lhs == rhs))
                    throw input_error("anchor is not a Lie homomorphism: rho([" + g_.element(i).label + "," +
                                      g_.element(j).label + "]) = " + grhopf::to_string(lhs, *R_) + " but [rho(" +
                                      g_.element(i).label + "),rho(" + g_.element(j).label +
                                      ")] = " + grhopf::to_string(rhs, *R_));
            }
    }

    const lie_algebra& g() const { return g_; }
    const enveloping_algebra& U() const { return U_; }
    const ring_ptr& base() const { return R_; }
    std::size_t nb() const { return R_->size(); }
    const vector_field& anchor(std::size_t i) const { return anchor_.at(i); }

    series poly(std::string_view src) const { return parse_series(R_, exact, src); }
    series constant(const rational& c) const { return series::constant(R_, exact, c); }
    series var(std::size_t i) const { return series::var(R_, exact, i); }
    series monomial(const exponents& e) const
    {
        series s(R_, exact);
        s.add_term(e, rational(1));
        return s;
    }

    // rho(x_1)...rho(x_m) f; f may live in a larger ring that starts with the base variables.
    series act(std::size_t x, const series& f) const { return apply(anchor_.at(x), f); }
    series act(const word& w, series f) const
    {
        for (auto it = w.rbegin(); it != w.rend() && !f.is_zero(); ++it) f = act(static_cast<std::size_t>(*it), f);
        return f;
    }
    series act(const u_element& u, const series& f) const
    {
        series out(f.ring(), f.trunc());
        for (const auto& [w, c] : u) out += c * act(w, f);
        return out;
    }

    // ---- U(R, L) ---------------------------------------------------------------

    ure_element one() const { return from_poly(constant(1)); }
    ure_element gen(std::size_t i) const { return ure_element(word{static_cast<int>(i)}, constant(1)); }
    ure_element from_poly(const series& f) const { return ure_element(word{}, f.with_trunc(exact)); }
    ure_element from_u(const u_element& u) const
    {
        ure_element out;
        for (const auto& [w, c] : U_.normalize(u)) out.add(w, constant(c));
        return out;
    }

    ure_element scale_left(const series& f, const ure_element& a) const
    {
        ure_element out;
        for (const auto& [w, c] : a) out.add(w, f * c);
        return out;
    }

    // x (f w) = f (x w) + rho(x)(f) w
    ure_element left_mul_gen(std::size_t x, const ure_element& b) const
    {
        ure_element out;
        for (const auto& [w, f] : b) {
            word xw{static_cast<int>(x)};
            xw.insert(xw.end(), w.begin(), w.end());
            for (const auto& [v, c] : U_.normalize(xw)) out.add(v, c * f);
            out.add(w, act(x, f));
        }
        return out;
    }

    ure_element mul(const ure_element& a, const ure_element& b) const
    {
        ure_element out;
        for (const auto& [w, f] : a) {
            ure_element c = b;
            for (auto it = w.rbegin(); it != w.rend(); ++it) c = left_mul_gen(static_cast<std::size_t>(*it), c);
            out += scale_left(f, c);
        }
        return out;
    }
    ure_element commutator(const ure_element& a, const ure_element& b) const { return mul(a, b) - mul(b, a); }

    mixed_token gen_token(std::size_t i) const { return {static_cast<int>(i), {}}; }
    mixed_token var_token(std::size_t i) const
    {
        exponents e(nb(), 0);
        e.at(i) = 1;
        return {-1, e};
    }

    // Folds the word from the right with the rule above.
    ure_element normalize(const mixed_word& w) const
    {
        ure_element r = one();
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            r = it->gen >= 0 ? left_mul_gen(static_cast<std::size_t>(it->gen), r) : scale_left(monomial(it->mono), r);
        return r;
    }

    // Independent rewriting system on mixed words: merge monomials, move monomials
    // left past generators, sort generators. Any redex choice gives the same result.
    ure_element normalize(const mixed_word& w, rewrite_strategy s, std::mt19937* rng = nullptr) const
    {
        std::vector<std::size_t> redexes;
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (is_redex(w[k], w[k + 1])) redexes.push_back(k);
        if (redexes.empty()) return to_ure(w);
        std::size_t i = redexes.front();
        if (s == rewrite_strategy::rightmost) i = redexes.back();
        if (s == rewrite_strategy::random) {
            if (!rng) throw input_error("random strategy needs a generator");
            i = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(*rng)];
        }
        ure_element out;
        auto replace = [&](std::vector<mixed_token> mid, const rational& c) {
            mixed_word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            v.insert(v.end(), mid.begin(), mid.end());
            v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            out.add(normalize(v, s, rng), c);
        };
        const auto& a = w[i];
        const auto& b = w[i + 1];
        if (a.gen < 0 && b.gen < 0) {
            exponents e = a.mono;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.mono[k];
            replace({{-1, e}}, 1);
        } else if (a.gen >= 0 && b.gen < 0) {
            replace({b, a}, 1);
            const series d = act(static_cast<std::size_t>(a.gen), monomial(b.mono));
            for (const auto& [e, c] : d.terms()) {
                if (std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; }))
                    replace({}, c);
                else
                    replace({{-1, e}}, c);
            }
        } else {
            // x_j x_i -> x_i x_j + [x_j, x_i]
            replace({b, a}, 1);
            for (const auto& [k, c] : g_.structure(static_cast<std::size_t>(a.gen), static_cast<std::size_t>(b.gen)))
                replace({gen_token(k)}, c);
        }
        return out;
    }

    // Reads the empty-monomial coefficient: the operator applied to 1.
    series epsilon(const ure_element& a) const
    {
        auto c = a.find(word{});
        return c ? *c : series(R_, exact);
    }

    series apply_operator(const ure_element& a, const series& f) const
    {
        series out(R_, exact);
        for (const auto& [w, c] : a) out += c * act(w, f);
        return out;
    }

    r_tensor tensor(const ure_element& u, const ure_element& v) const
    {
        r_tensor out;
        for (const auto& [a, f] : u)
            for (const auto& [b, g] : v) out.add({a, b}, f * g);
        return out;
    }

    // Delta(f A) = f sum A' (x) A''
    r_tensor coproduct(const ure_element& u) const
    {
        r_tensor out;
        for (const auto& [a, f] : u)
            for (const auto& [p, c] : U_.coproduct(u_element(a, rational(1)))) out.add(p, c * f);
        return out;
    }

    // (t f on the first leg, t f on the second leg)
    std::pair<r_tensor, r_tensor> coincidence_sides(const r_tensor& t, const series& f) const
    {
        r_tensor left, right;
        const ure_element fu = from_poly(f);
        for (const auto& [p, h] : t) {
            const ure_element a(p.first, h), b(p.second, constant(1));
            left += tensor(mul(a, fu), b);
            right += tensor(a, mul(b, fu));
        }
        return {left, right};
    }
    bool coincidence_check(const r_tensor& t, const series& f) const
    {
        auto [l, r] = coincidence_sides(t, f);
        return l == r;
    }

    // All mixed words over generators and base variables of length <= max_len.
    std::vector<mixed_word> mixed_words(std::size_t max_len) const
    {
        std::vector<mixed_token> letters;
        for (std::size_t i = 0; i < g_.dim(); ++i) letters.push_back(gen_token(i));
        for (std::size_t i = 0; i < nb(); ++i) letters.push_back(var_token(i));
        std::vector<mixed_word> out{{}}, layer{{}};
        for (std::size_t len = 1; len <= max_len; ++len) {
            std::vector<mixed_word> next;
            for (const auto& w : layer)
                for (const auto& l : letters) {
                    auto v = w;
                    v.push_back(l);
                    next.push_back(v);
                }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }

    std::string to_string(const ure_element& a) const
    {
        std::vector<std::pair<word, series>> terms(a.begin(), a.end());
        std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return print_before(x.first, y.first); });
        std::string out;
        for (const auto& [w, c] : terms)
            detail::append_signed(out, detail::scaled(c, w.empty() ? std::string{} : word_to_string(g_, w)));
        return out.empty() ? "0" : out;
    }
    std::string to_string(const r_tensor& t) const
    {
        std::vector<std::pair<word_pair, series>> terms(t.begin(), t.end());
        std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
            if (x.first.first != y.first.first) return print_before(x.first.first, y.first.first);
            return print_before(x.first.second, y.first.second);
        });
        std::string out;
        for (const auto& [p, c] : terms)
            detail::append_signed(out, detail::scaled(c, "(" + word_to_string(g_, p.first) + " | " +
                                                             word_to_string(g_, p.second) + ")"));
        return out.empty() ? "0" : out;
    }
    std::string to_string(const r_tensor3& t) const
    {
        std::string out;
        for (const auto& [p, c] : t)
            detail::append_signed(out, detail::scaled(c, "(" + word_to_string(g_, p[0]) + " | " + word_to_string(g_, p[1]) +
                                                             " | " + word_to_string(g_, p[2]) + ")"));
        return out.empty() ? "0" : out;
    }
    std::string to_string(const mixed_word& w) const
    {
        std::string out;
        for (const auto& t : w) {
            if (!out.empty()) out += "*";
            out += t.gen >= 0 ? g_.element(static_cast<std::size_t>(t.gen)).label : monomial(t.mono).to_string();
        }
        return out.empty() ? "1" : out;
    }

private:
    bool is_redex(const mixed_token& a, const mixed_token& b) const
    {
        if (b.gen < 0) return true;  // monomial after anything
        return a.gen >= 0 && a.gen > b.gen;
    }
    ure_element to_ure(const mixed_word& w) const
    {
        series c = constant(1);
        word gens;
        for (const auto& t : w) {
            if (t.gen < 0)
                c = c * monomial(t.mono);
            else
                gens.push_back(t.gen);
        }
        return ure_element(gens, c);
    }

    lie_algebra g_;
    enveloping_algebra U_;
    ring_ptr R_;
    std::vector<vector_field> anchor_;
};

// Expressions over generators and base variables, evaluated in U(R, L).
struct ure_target {
    using value = ure_element;
    const lie_rinehart_pair& pair;

    value scalar(const rational& c) const { return pair.from_poly(pair.constant(c)); }
    value ident(const std::string& name, std::size_t pos) const
    {
        if (auto i = pair.g().find(name)) return pair.gen(*i);
        if (auto i = pair.base()->find(name)) return pair.from_poly(pair.var(*i));
        std::vector<std::string> names;
        for (const auto& e : pair.g().basis()) names.push_back(e.label);
        for (const auto& v : pair.base()->vars()) names.push_back(v.name);
        throw parse_error(unknown_name("symbol", name, names), pos);
    }
    value deriv(const std::string&, std::size_t pos) const
    {
        throw parse_error("write derivations through the generators of the algebra", pos);
    }
    value add(const value& a, const value& b) const { return a + b; }
    value scale(const rational& c, const value& a) const { return c * a; }
    value mul(const value& a, const value& b) const { return pair.mul(a, b); }
    value commutator(const value& a, const value& b) const { return pair.commutator(a, b); }
};

inline ure_element parse_ure(const lie_rinehart_pair& pair, std::string_view src)
{
    return evaluate(*parse_expression(src), ure_target{pair});
}

// First-order operators f + X while parsing anchors such as "z*d/dz + d/dw".
struct field_target {
    struct value {
        series scalar;
        vector_field field;
    };
    ring_ptr ring;

    value zero() const { return {series(ring, exact), {std::vector<series>(ring->size(), series(ring, exact))}}; }
    value scalar(const rational& c) const
    {
        auto v = zero();
        v.scalar = series::constant(ring, exact, c);
        return v;
    }
    value ident(const std::string& name, std::size_t pos) const
    {
        auto v = zero();
        v.scalar = series_target{ring, exact}.ident(name, pos);
        return v;
    }
    value deriv(const std::string& name, std::size_t pos) const
    {
        auto i = ring->find(name);
        if (!i) {
            std::vector<std::string> names;
            for (const auto& var : ring->vars()) names.push_back(var.name);
            throw parse_error(unknown_name("variable", name, names), pos);
        }
        auto v = zero();
        v.field.coeff[*i] = series::constant(ring, exact, rational(1));
        return v;
    }
    static bool has_field(const value& v)
    {
        return std::any_of(v.field.coeff.begin(), v.field.coeff.end(), [](const series& s) { return !s.is_zero(); });
    }
    value add(const value& a, const value& b) const
    {
        value r = a;
        r.scalar += b.scalar;
        for (std::size_t i = 0; i < r.field.coeff.size(); ++i) r.field.coeff[i] += b.field.coeff[i];
        return r;
    }
    value scale(const rational& c, const value& a) const
    {
        value r = a;
        r.scalar = c * r.scalar;
        for (auto& s : r.field.coeff) s = c * s;
        return r;
    }
    // A polynomial factor multiplies the coefficients; two fields do not multiply.
    value mul(const value& a, const value& b) const
    {
        if (has_field(a) && has_field(b)) throw input_error("a product of two derivations is not a vector field");
        const value& f = has_field(a) ? b : a;
        const value& x = has_field(a) ? a : b;
        value r = zero();
        r.scalar = f.scalar * x.scalar;
        for (std::size_t i = 0; i < r.field.coeff.size(); ++i) r.field.coeff[i] = f.scalar * x.field.coeff[i];
        return r;
    }
    value commutator(const value& a, const value& b) const
    {
        if (!a.scalar.is_zero() || !b.scalar.is_zero()) throw input_error("brackets are taken between vector fields");
        value r = zero();
        r.field = lie_bracket(a.field, b.field);
        return r;
    }
};

inline vector_field parse_vector_field(const ring_ptr& ring, std::string_view src)
{
    auto v = evaluate(*parse_expression(src), field_target{ring});
    if (!v.scalar.is_zero()) throw input_error("'" + std::string(src) + "' has a function part; an anchor must be a vector field");
    return v.field;
}

// Anchors given as strings "x: d/dz" or as a label -> expression map.
inline std::map<std::string, vector_field> parse_anchor(const ring_ptr& ring,
                                                        const std::vector<std::pair<std::string, std::string>>& items)
{
    std::map<std::string, vector_field> out;
    for (const auto& [label, src] : items) {
        if (out.count(label)) throw input_error("anchor of '" + label + "' given twice");
        try {
            out[label] = parse_vector_field(ring, src);
        } catch (const parse_error& e) {
            throw input_error("anchor of '" + label + "': " + e.what());
        }
    }
    return out;
}

// ---- the left bialgebroid U(R, L) --------------------------------------------

using left_dossier = structure_dossier<ure_element, r_tensor, r_tensor3, series>;

inline r_tensor3 coproduct_first(const lie_rinehart_pair& P, const r_tensor& t)
{
    r_tensor3 out;
    for (const auto& [p, f] : t)
        for (const auto& [q, c] : P.U().coproduct(u_element(p.first, rational(1))))
            out.add(word_triple{q.first, q.second, p.second}, c * f);
    return out;
}
inline r_tensor3 coproduct_second(const lie_rinehart_pair& P, const r_tensor& t)
{
    r_tensor3 out;
    for (const auto& [p, f] : t)
        for (const auto& [q, c] : P.U().coproduct(u_element(p.second, rational(1))))
            out.add(word_triple{p.first, q.first, q.second}, c * f);
    return out;
}

// Carrier f w with f in {1, base variables} and |w| <= max_len.
inline left_dossier make_left_dossier(const lie_rinehart_pair& P, std::size_t max_len)
{
    left_dossier d;
    d.subject = "enveloping algebroid of " + P.g().name() + " acting on " + std::to_string(P.nb()) + " variables";
    d.kind = flavor::left_bialgebra;
    std::vector<series> coeffs{P.constant(1)};
    for (std::size_t i = 0; i < P.nb(); ++i) coeffs.push_back(P.var(i));
    for (const auto& f : coeffs)
        for (const auto& w : P.U().admissible_monomials(max_len)) {
            ure_element u(w, f);
            d.carrier_names.push_back(P.to_string(u));
            d.carrier.push_back(u);
        }
    d.base = {P.constant(1), P.constant(rational(-2, 3))};
    d.base_names = {"1", "-2/3"};
    for (std::size_t i = 0; i < P.nb(); ++i) {
        series f = P.var(i) * P.var(i) + P.constant(1);
        d.base.push_back(f);
        d.base_names.push_back(f.to_string());
    }
    const lie_rinehart_pair* p = &P;
    d.show = [p](const ure_element& u) { return p->to_string(u); };
    d.show2 = [p](const r_tensor& t) { return p->to_string(t); };
    d.show3 = [p](const r_tensor3& t) { return p->to_string(t); };
    d.show_base = [](const series& s) { return s.to_string(); };
    d.mul = [p](const ure_element& a, const ure_element& b) { return p->mul(a, b); };
    d.one = [p] { return p->one(); };
    d.base_mul = [](const series& a, const series& b) { return a * b; };
    d.delta = [p](const ure_element& u) { return p->coproduct(u); };
    d.counit = [p](const ure_element& u) { return p->epsilon(u); };
    d.delta_id = [p](const r_tensor& t) { return coproduct_first(*p, t); };
    d.id_delta = [p](const r_tensor& t) { return coproduct_second(*p, t); };
    // u (x) r -> r u and r (x) v -> r v: both legs are left modules
    d.id_counit = [p](const r_tensor& t) {
        ure_element out;
        for (const auto& [q, f] : t)
            if (q.second.empty()) out.add(q.first, f);
        return out;
    };
    d.counit_id = [p](const r_tensor& t) {
        ure_element out;
        for (const auto& [q, f] : t)
            if (q.first.empty()) out.add(q.second, f);
        return out;
    };
    // componentwise product, valid on the coincidence locus
    d.mul2 = [p](const r_tensor& x, const r_tensor& y) {
        r_tensor out;
        for (const auto& [a, f] : x)
            for (const auto& [b, g] : y) {
                ure_element left = p->mul(ure_element(a.first, f), ure_element(b.first, g));
                u_element right = p->U().mul(u_element(a.second, rational(1)), u_element(b.second, rational(1)));
                for (const auto& [l, h] : left)
                    for (const auto& [r, c] : right) out.add({l, r}, c * h);
            }
        return out;
    };
    d.one2 = [p] { return p->tensor(p->one(), p->one()); };
    d.tensor = [p](const ure_element& a, const ure_element& b) { return p->tensor(a, b); };
    d.eta_l = [p](const series& f) { return p->from_poly(f); };
    return d;
}

// Operators z^b w (|b| <= coeff_degree, |w| <= max_len) acting on monomials of degree
// <= test_degree; returns (number of operators, rank over Q).
inline std::pair<std::size_t, std::size_t> operator_rank(const lie_rinehart_pair& P, std::size_t max_len,
                                                         unsigned coeff_degree, unsigned test_degree)
{
    const std::size_t nb = P.nb();
    std::vector<exponents> monos{exponents(nb, 0)};
    std::function<void(std::size_t, unsigned, exponents&)> rec;
    auto all_up_to = [&](unsigned deg) {
        std::vector<exponents> out;
        exponents e(nb, 0);
        rec = [&](std::size_t i, unsigned left, exponents& cur) {
            if (i == nb) {
                out.push_back(cur);
                return;
            }
            for (unsigned k = 0; k <= left; ++k) {
                cur[i] = k;
                rec(i + 1, left - k, cur);
            }
            cur[i] = 0;
        };
        rec(0, deg, e);
        return out;
    };
    const auto coeffs = all_up_to(coeff_degree);
    const auto tests = all_up_to(test_degree);
    std::vector<std::vector<rational>> rows;
    std::map<exponents, std::size_t> column;
    std::vector<std::map<exponents, rational>> raw;
    for (const auto& b : coeffs)
        for (const auto& w : P.U().admissible_monomials(max_len)) {
            ure_element op(w, P.monomial(b));
            std::map<exponents, rational> row;
            for (std::size_t t = 0; t < tests.size(); ++t)
                for (const auto& [e, c] : P.apply_operator(op, P.monomial(tests[t]))) {
                    exponents key = e;
                    key.push_back(static_cast<unsigned>(t));
                    row[key] = c;
                    column.emplace(key, 0);
                }
            raw.push_back(std::move(row));
        }
    std::size_t j = 0;
    for (auto& [k, idx] : column) idx = j++;
    for (const auto& r : raw) {
        std::vector<rational> v(column.size());
        for (const auto& [k, c] : r) v[column[k]] = c;
        rows.push_back(std::move(v));
    }
    return {raw.size(), rank(std::move(rows))};
}

// ---- the Hopf algebroid of an action: R (x) U(g)* ------------------------------
//
// Functionals are one-slot tables A -> R on admissible monomials |A| <= N. Two-slot
// tables T(A, B) are the Taylor coefficients of functions on composable pairs;
// the tables produced by (S (x) id) and (id (x) S) are coefficients of functions
// on pairs with a common source, which is what the multiplication reads.
class action_hopf {
public:
    action_hopf(lie_rinehart_pair pair, unsigned order)
        : P_(std::make_shared<lie_rinehart_pair>(std::move(pair))), order_(order)
    {
        monomials_ = P_->U().admissible_monomials(order);
        for (const auto& a : monomials_) {
            split_.emplace(a, P_->U().coproduct(u_element(a, rational(1))));
            antipode_.emplace(a, P_->U().antipode(u_element(a, rational(1))));
        }
    }

    const lie_rinehart_pair& pair() const { return *P_; }
    unsigned order() const { return order_; }
    const std::vector<word>& monomials() const { return monomials_; }
    const ring_ptr& ring() const { return P_->base(); }

    hc_table empty(std::size_t slots, unsigned order) const { return hc_table{slots, order, ring(), {}}; }

    hc_table functional(const std::map<word, series>& values) const
    {
        hc_table t = empty(1, order_);
        for (const auto& [w, v] : values) {
            if (w.size() > order_ || !P_->U().is_admissible(w)) throw input_error("functional key is not an admissible monomial of length <= N");
            t.set({w}, v.with_trunc(exact));
        }
        return t;
    }

    // phi(u) for u in U(g), by linearity.
    series value(const hc_table& phi, const u_element& u) const
    {
        series out(ring(), exact);
        for (const auto& [w, c] : u) out += c * phi.at({w});
        return out;
    }

    hc_table one() const { return eta_l(P_->constant(1)); }
    hc_table eta_l(const series& f) const { return functional({{word{}, f}}); }
    hc_table eta_r(const series& f) const
    {
        hc_table t = empty(1, order_);
        for (const auto& a : monomials_) t.set({a}, P_->act(a, f.with_trunc(exact)));
        return t;
    }

    hc_table product(const hc_table& x, const hc_table& y) const
    {
        const unsigned N = std::min(x.order, y.order);
        hc_table t = empty(1, N);
        for (const auto& a : monomials_) {
            if (a.size() > N) continue;
            series v(ring(), exact);
            for (const auto& [p, c] : split(a))
                v += c * (x.at({p.first}) * y.at({p.second}));
            t.set({a}, v);
        }
        return t;
    }

    series counit(const hc_table& x) const { return x.at({word{}}); }

    // Delta(phi)(A, B) = phi(A B)
    hc_table coproduct(const hc_table& x) const
    {
        hc_table t = empty(2, x.order);
        for (const auto& key : table_keys(monomials_, 2, x.order))
            t.set(key, value(x, P_->U().mul(u_element(key[0], rational(1)), u_element(key[1], rational(1)))));
        return t;
    }

    // S(phi)(A) = sum rho(A')(phi(S A''))
    hc_table antipode(const hc_table& x) const
    {
        hc_table t = empty(1, x.order);
        for (const auto& a : monomials_) {
            if (a.size() > x.order) continue;
            series v(ring(), exact);
            for (const auto& [p, c] : split(a))
                v += c * P_->act(p.first, value(x, antipode_.at(p.second)));
            t.set({a}, v);
        }
        return t;
    }

    // (phi (x) psi)(A, B) = sum phi(A') rho(A'')(psi(B))
    hc_table tensor(const hc_table& x, const hc_table& y) const
    {
        const unsigned N = std::min(x.order, y.order);
        hc_table t = empty(2, N);
        for (const auto& key : table_keys(monomials_, 2, N)) {
            series v(ring(), exact);
            for (const auto& [p, c] : split(key[0]))
                v += c * (x.at({p.first}) * P_->act(p.second, y.at({key[1]})));
            t.set(key, v);
        }
        return t;
    }

    hc_table one2() const
    {
        hc_table t = empty(2, order_);
        t.set({word{}, word{}}, P_->constant(1));
        return t;
    }

    hc_table mul2(const hc_table& x, const hc_table& y) const
    {
        const unsigned N = std::min(x.order, y.order);
        hc_table t = empty(2, N);
        for (const auto& key : table_keys(monomials_, 2, N)) {
            series v(ring(), exact);
            auto d1 = split(key[0]);
            auto d2 = split(key[1]);
            for (const auto& [p1, c1] : d1)
                for (const auto& [p2, c2] : d2)
                    v += rational(c1 * c2) * (x.at({p1.first, p2.first}) * y.at({p1.second, p2.second}));
            t.set(key, v);
        }
        return t;
    }

    hc_table delta_id(const hc_table& x) const
    {
        hc_table t = empty(3, x.order);
        for (const auto& key : table_keys(monomials_, 3, x.order)) {
            series v(ring(), exact);
            for (const auto& [w, c] : P_->U().mul(u_element(key[0], rational(1)), u_element(key[1], rational(1))))
                v += c * x.at({w, key[2]});
            t.set(key, v);
        }
        return t;
    }
    hc_table id_delta(const hc_table& x) const
    {
        hc_table t = empty(3, x.order);
        for (const auto& key : table_keys(monomials_, 3, x.order)) {
            series v(ring(), exact);
            for (const auto& [w, c] : P_->U().mul(u_element(key[1], rational(1)), u_element(key[2], rational(1))))
                v += c * x.at({key[0], w});
            t.set(key, v);
        }
        return t;
    }

    hc_table id_counit(const hc_table& x) const
    {
        hc_table t = empty(1, x.order);
        for (const auto& a : monomials_)
            if (a.size() <= x.order) t.set({a}, x.at({a, word{}}));
        return t;
    }
    hc_table counit_id(const hc_table& x) const
    {
        hc_table t = empty(1, x.order);
        for (const auto& a : monomials_)
            if (a.size() <= x.order) t.set({a}, x.at({word{}, a}));
        return t;
    }

    // (S (x) id): apply S to the first slot of every column B.
    hc_table s_id(const hc_table& x) const
    {
        hc_table t = empty(2, x.order);
        for (const auto& b : monomials_) {
            if (b.size() > x.order) continue;
            hc_table column = empty(1, x.order - static_cast<unsigned>(b.size()));
            for (const auto& a : monomials_)
                if (a.size() <= column.order) column.set({a}, x.at({a, b}));
            for (const auto& [k, v] : antipode(column).entries) t.set({k[0], b}, v);
        }
        return t;
    }
    // (id (x) S): the second slot read at S(B).
    hc_table id_s(const hc_table& x) const
    {
        hc_table t = empty(2, x.order);
        for (const auto& key : table_keys(monomials_, 2, x.order)) {
            series v(ring(), exact);
            for (const auto& [w, c] : antipode_.at(key[1])) v += c * x.at({key[0], w});
            t.set(key, v);
        }
        return t;
    }
    hc_table mu(const hc_table& x) const
    {
        hc_table t = empty(1, x.order);
        for (const auto& a : monomials_) {
            if (a.size() > x.order) continue;
            series v(ring(), exact);
            for (const auto& [p, c] : split(a)) v += c * x.at({p.first, p.second});
            t.set({a}, v);
        }
        return t;
    }

    std::string show(const hc_table& t) const
    {
        std::string out;
        for (const auto& [k, v] : t.entries) {
            if (!out.empty()) out += "; ";
            out += "(";
            for (std::size_t i = 0; i < k.size(); ++i) out += (i ? ", " : "") + word_to_string(P_->g(), k[i]);
            out += ") -> " + v.to_string();
        }
        return out.empty() ? "0" : out;
    }

    // f d_A for f in {1, base variables}, |A| <= N.
    std::vector<std::pair<std::string, hc_table>> basis() const
    {
        std::vector<std::pair<std::string, hc_table>> out;
        std::vector<series> coeffs{P_->constant(1)};
        for (std::size_t i = 0; i < P_->nb(); ++i) coeffs.push_back(P_->var(i));
        for (const auto& f : coeffs)
            for (const auto& a : monomials_) {
                std::string name = (f.to_string() == "1" ? std::string{} : f.to_string() + "*") + "d[" +
                                   word_to_string(P_->g(), a) + "]";
                out.emplace_back(name, functional({{a, f}}));
            }
        return out;
    }

private:
    const u_tensor& split(const word& a) const { return split_.at(a); }

    std::shared_ptr<const lie_rinehart_pair> P_;
    unsigned order_;
    std::vector<word> monomials_;
    std::map<word, u_tensor> split_;
    std::map<word, u_element> antipode_;
};

using algebroid_dossier = structure_dossier<hc_table, hc_table, hc_table, series>;

inline std::vector<series> sample_base(const lie_rinehart_pair& P)
{
    std::vector<series> out{P.constant(1), P.constant(rational(3, 2))};
    for (std::size_t i = 0; i < P.nb(); ++i) {
        out.push_back(P.var(i));
        out.push_back(P.var(i) * P.var(i) - P.constant(2) * P.var(i));
    }
    return out;
}

inline algebroid_dossier make_action_dossier(const action_hopf& H)
{
    algebroid_dossier d;
    d.subject = "action Hopf algebroid of " + H.pair().g().name() + ", order " + std::to_string(H.order());
    d.kind = flavor::hopf_algebroid;
    for (auto& [n, f] : H.basis()) {
        d.carrier_names.push_back(n);
        d.carrier.push_back(std::move(f));
    }
    for (const auto& f : sample_base(H.pair())) {
        d.base.push_back(f);
        d.base_names.push_back(f.to_string());
    }
    const action_hopf* h = &H;
    d.show = [h](const hc_table& t) { return h->show(t); };
    d.show2 = d.show;
    d.show3 = d.show;
    d.show_base = [](const series& s) { return s.to_string(); };
    d.mul = [h](const hc_table& a, const hc_table& b) { return h->product(a, b); };
    d.one = [h] { return h->one(); };
    d.parity = [](const hc_table&) { return 0; };
    d.base_mul = [](const series& a, const series& b) { return a * b; };
    d.delta = [h](const hc_table& a) { return h->coproduct(a); };
    d.counit = [h](const hc_table& a) { return h->counit(a); };
    d.delta_id = [h](const hc_table& t) { return h->delta_id(t); };
    d.id_delta = [h](const hc_table& t) { return h->id_delta(t); };
    d.id_counit = [h](const hc_table& t) { return h->id_counit(t); };
    d.counit_id = [h](const hc_table& t) { return h->counit_id(t); };
    d.mul2 = [h](const hc_table& a, const hc_table& b) { return h->mul2(a, b); };
    d.one2 = [h] { return h->one2(); };
    d.tensor = [h](const hc_table& a, const hc_table& b) { return h->tensor(a, b); };
    d.eta_l = [h](const series& f) { return h->eta_l(f); };
    d.eta_r = [h](const series& f) { return h->eta_r(f); };
    d.antipode = [h](const hc_table& a) { return h->antipode(a); };
    d.mu = [h](const hc_table& t) { return h->mu(t); };
    d.s_id = [h](const hc_table& t) { return h->s_id(t); };
    d.id_s = [h](const hc_table& t) { return h->id_s(t); };
    return d;
}

// ---- Harish-Chandra pair of an action ------------------------------------------
//
// Hom_{U(h)}(U(g), F(M x H)) with H the formal group of h acting on M on the
// right through the flows of the anchor. With h = g this is the function algebra
// of the formal action groupoid; with h = 0 it is the action Hopf algebroid.
class action_hc {
public:
    action_hc(const lie_rinehart_pair& pair, std::vector<std::string> h_labels, unsigned order,
              const std::map<std::string, vector_field>& h_flow = {})
        : pair_(pair), P_(pair.g(), h_labels, order, pair.base()->vars()), order_(order)
    {
        const auto& g = P_.g();
        for (std::size_t i = 0; i < g.dim(); ++i) rho_.push_back(pair.anchor(pair.g().index_of(g.element(i).label)));
        for (std::size_t j = 0; j < P_.nh(); ++j) flow_.push_back(rho_[j]);
        for (const auto& [label, X] : h_flow) {
            auto j = g.index_of(label);
            if (j >= P_.nh()) throw input_error("flow given for '" + label + "', which is not in h");
            if (X.coeff.size() != pair.nb()) throw input_error("flow of '" + label + "' has the wrong number of components");
            flow_[j] = X;
        }
        check_compatibility();
    }

    const hc_pair& hc() const { return P_; }
    const lie_rinehart_pair& pair() const { return pair_; }
    unsigned order() const { return order_; }

    series act(const word& w, series f) const
    {
        for (auto it = w.rbegin(); it != w.rend() && !f.is_zero(); ++it) f = apply(rho_[static_cast<std::size_t>(*it)], f);
        return f;
    }
    series act(const u_element& u, const series& f) const
    {
        series out(f.ring(), f.trunc());
        for (const auto& [w, c] : u) out += c * act(w, f);
        return out;
    }

    // f(z . exp(sign w_slot)) for the right action of H.
    series flow(const series& s, std::size_t slots, std::size_t slot, int sign = 1) const
    {
        const auto& R = P_.ring(slots);
        auto w = P_.coords(slots, slot, order_);
        series out = s, term = s;
        for (unsigned k = 1; k <= order_ && !term.is_zero(); ++k) {
            series next(R, term.trunc());
            for (std::size_t j = 0; j < P_.nh(); ++j) {
                series d = apply(flow_[j], term);
                if (!d.is_zero()) next += w[j] * d;
            }
            term = (rational(sign) / k) * next;
            out += term;
        }
        return out.with_trunc(s.trunc());
    }

    // Checks exp(V) rho(x) exp(-V) z_i = rho(Ad_w x) z_i for every generator and base variable.
    void check_compatibility() const
    {
        const auto& R = P_.ring(1);
        const auto t = P_.trunc(order_);
        lie_vec<series> wv;
        auto w = P_.coords(1, 0, order_);
        for (std::size_t j = 0; j < P_.nh(); ++j) wv.add(j, w[j]);
        for (std::size_t x = 0; x < P_.g().dim(); ++x) {
            auto ad = group_adjoint(P_.g(), wv, lie_vec<series>(x, series::constant(R, t, rational(1))), order_);
            for (std::size_t i = 0; i < pair_.nb(); ++i) {
                series zi = series::var(R, t, i);
                series lhs = flow(apply(rho_[x], flow(zi, 1, 0, -1)), 1, 0, 1);
                series rhs(R, t);
                for (const auto& [k, c] : ad) rhs += c * apply(rho_[k], zi);
                series res = lhs - rhs;
                if (!res.is_zero()) {
                    unsigned low = unbounded;
                    for (const auto& [e, c] : res.terms()) low = std::min(low, res.order_of(e));
                    throw input_error("the H-action is not compatible with the anchor at generator '" +
                                      P_.g().element(x).label + "' (first mismatch at order " + std::to_string(low) +
                                      ")");
                }
            }
        }
    }

    hc_functional one() const { return P_.unit(); }
    hc_functional eta_l(const series& f) const
    {
        return P_.make({{word{}, P_.from_base(f, 1, order_)}}, order_);
    }
    hc_functional eta_r(const series& f) const
    {
        std::map<word, series> vals;
        for (const auto& s : P_.m_monomials()) {
            const unsigned t = order_ - static_cast<unsigned>(s.size());
            vals[s] = flow(act(P_.U().psi_monomial(s), P_.from_base(f, 1, t)), 1, 0);
        }
        return P_.make(vals, order_);
    }
    hc_functional product(const hc_functional& a, const hc_functional& b) const { return P_.product(a, b); }
    series counit(const hc_functional& a) const { return P_.counit_value(a); }
    hc_table coproduct(const hc_functional& a) const { return P_.coproduct(a); }

    // S(phi)(w, a) = sum E_w[ rho(a') phi(iota(w), Ad_w(S a'')) ]
    hc_functional antipode(const hc_functional& f) const
    {
        const auto T1 = P_.table(f);
        const unsigned N = T1.order;
        const auto& R = P_.ring(1);
        const auto t = P_.trunc(N);
        auto w = P_.coords(1, 0, N);
        auto pulled = P_.pull(T1, {P_.invert(w, R, t)}, R);
        auto ad = P_.adjoint(w, R, t);
        hc_table out{1, N, R, {}};
        for (const auto& a : P_.monomials(N)) {
            const auto ta = P_.trunc(N - static_cast<unsigned>(a.size()));
            series v(R, ta);
            for (const auto& [p, c] : P_.U().coproduct(u_element(a, rational(1)))) {
                u_series arg = P_.adjoint(ad, P_.U().antipode(u_element(p.second, rational(1))), R, t);
                v += c * act(p.first, P_.evaluate(pulled, {arg}, ta));
            }
            out.set({a}, flow(v, 1, 0));
        }
        return P_.restrict(out);
    }

    // (phi (x) psi)(w1, a1, w2, a2) = sum phi(w1, a1') E_{w1}[rho(a1'') psi(w2, a2)]
    hc_table tensor(const hc_functional& x, const hc_functional& y) const
    {
        const unsigned N = std::min(x.order, y.order);
        const auto& R = P_.ring(2);
        auto T1 = P_.table(x), T2 = P_.table(y);
        auto A = P_.pull(T1, {P_.coords(2, 0, N)}, R);
        auto B = P_.pull(T2, {P_.coords(2, 1, N)}, R);
        hc_table out{2, N, R, {}};
        for (const auto& key : P_.keys(2, N)) {
            const auto tk = P_.trunc(N - static_cast<unsigned>(total_length(key)));
            series v(R, tk);
            for (const auto& [p, c] : P_.U().coproduct(u_element(key[0], rational(1)))) {
                const series& left = A.get({p.first});
                if (left.is_zero()) continue;
                v += c * (left * flow(act(p.second, B.get({key[1]})), 2, 0));
            }
            out.set(key, v.with_trunc(tk));
        }
        return out;
    }

    // P(w1, a1, w2, a2) = sum E_{w1}[ rho(a1') T(iota(w1), Ad_{w1}(S a1''), w2, a2) ]
    hc_table s_id(const hc_table& T) const
    {
        const unsigned N = T.order;
        const auto& R = P_.ring(2);
        const auto t = P_.trunc(N);
        auto w1 = P_.coords(2, 0, N);
        auto pulled = P_.pull(T, {P_.invert(w1, R, t), P_.coords(2, 1, N)}, R);
        auto ad = P_.adjoint(w1, R, t);
        hc_table out{2, N, R, {}};
        for (const auto& key : P_.keys(2, N)) {
            const auto tk = P_.trunc(N - static_cast<unsigned>(total_length(key)));
            series v(R, tk);
            for (const auto& [p, c] : P_.U().coproduct(u_element(key[0], rational(1)))) {
                u_series a1 = P_.adjoint(ad, P_.U().antipode(u_element(p.second, rational(1))), R, t);
                u_series a2 = lift(u_element(key[1], rational(1)), R, t);
                v += c * act(p.first, P_.evaluate(pulled, {a1, a2}, tk));
            }
            out.set(key, flow(v, 2, 0));
        }
        return out;
    }

    std::string show(const hc_functional& f) const { return P_.show(f); }
    std::string show(const hc_table& t) const { return P_.show(t); }

    // f w^b d_s for f in {1, base variables}.
    std::vector<std::pair<std::string, hc_functional>> basis() const
    {
        std::vector<std::pair<std::string, hc_functional>> out;
        std::vector<series> coeffs{pair_.constant(1)};
        for (std::size_t i = 0; i < pair_.nb(); ++i) coeffs.push_back(pair_.var(i));
        for (const auto& f : coeffs)
            for (const auto& [n, b] : P_.basis(order_)) {
                std::string name = (f.to_string() == "1" ? std::string{} : f.to_string() + "*") + n;
                out.emplace_back(name, product(eta_l(f), b));
            }
        return out;
    }

private:
    lie_rinehart_pair pair_;
    hc_pair P_;
    unsigned order_;
    std::vector<vector_field> rho_, flow_;
};

using action_hc_dossier = structure_dossier<hc_functional, hc_table, hc_table, series>;

inline action_hc_dossier make_action_hc_dossier(const action_hc& A)
{
    action_hc_dossier d;
    d.subject = "Harish-Chandra Hopf algebroid of (" + A.hc().g().name() + ", " + A.hc().h().name() +
                ") acting on " + std::to_string(A.pair().nb()) + " variables, order " + std::to_string(A.order());
    d.kind = flavor::hopf_algebroid;
    for (auto& [n, f] : A.basis()) {
        d.carrier_names.push_back(n);
        d.carrier.push_back(std::move(f));
    }
    for (const auto& f : sample_base(A.pair())) {
        d.base.push_back(f);
        d.base_names.push_back(f.to_string());
    }
    const action_hc* a = &A;
    const hc_pair* p = &A.hc();
    d.show = [a](const hc_functional& f) { return a->show(f); };
    d.show2 = [a](const hc_table& t) { return a->show(t); };
    d.show3 = d.show2;
    d.show_base = [](const series& s) { return s.to_string(); };
    d.mul = [a](const hc_functional& x, const hc_functional& y) { return a->product(x, y); };
    d.one = [a] { return a->one(); };
    d.parity = [](const hc_functional&) { return 0; };
    d.base_mul = [](const series& x, const series& y) { return x * y; };
    d.delta = [a](const hc_functional& x) { return a->coproduct(x); };
    d.counit = [a](const hc_functional& x) { return a->counit(x); };
    d.delta_id = [p](const hc_table& t) { return p->delta_id(t); };
    d.id_delta = [p](const hc_table& t) { return p->id_delta(t); };
    d.id_counit = [p](const hc_table& t) { return p->id_counit(t); };
    d.counit_id = [p](const hc_table& t) { return p->counit_id(t); };
    d.mul2 = [p](const hc_table& x, const hc_table& y) { return p->mul2(x, y); };
    d.one2 = [p] { return p->one2(); };
    d.tensor = [a](const hc_functional& x, const hc_functional& y) { return a->tensor(x, y); };
    d.eta_l = [a](const series& f) { return a->eta_l(f); };
    d.eta_r = [a](const series& f) { return a->eta_r(f); };
    d.antipode = [a](const hc_functional& x) { return a->antipode(x); };
    d.mu = [p](const hc_table& t) { return p->mu(t); };
    d.s_id = [a](const hc_table& t) { return a->s_id(t); };
    d.id_s = [p](const hc_table& t) { return p->id_s(t); };
    return d;
}

// ---- from the formal groupoid to the action algebroid ---------------------------
//
// G is action_hc with h = g, so a functional is a single series phi(z, w) in
// exponential coordinates. Its image at an admissible A is sum_s c_s s! [w^s]phi
// with A = psi(sum c_s s).
class groupoid_projection {
public:
    groupoid_projection(const action_hc& G, const action_hopf& H) : G_(G), H_(H)
    {
        if (G.hc().nh() != G.hc().g().dim()) throw input_error("the groupoid needs h = g");
        if (!G.hc().g().same_structure(H.pair().g())) throw input_error("groupoid and algebroid use different algebras");
    }

    // Coefficient of the w-monomial (slot by slot) as a base polynomial.
    series coefficient(const series& s, const std::vector<word>& slots) const
    {
        const std::size_t nb = G_.hc().nb(), nh = G_.hc().nh();
        exponents target(nb + slots.size() * nh, 0);
        for (std::size_t k = 0; k < slots.size(); ++k)
            for (int x : slots[k]) ++target[nb + k * nh + static_cast<std::size_t>(x)];
        series out(H_.ring(), exact);
        for (const auto& [e, c] : s.terms()) {
            if (!std::equal(e.begin() + static_cast<std::ptrdiff_t>(nb), e.end(), target.begin() + static_cast<std::ptrdiff_t>(nb)))
                continue;
            exponents b(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nb));
            out.add_term(b, c);
        }
        return out;
    }

    // psi^{-1}(A) in the ordering of G, with multiplicity factorials folded in.
    std::vector<std::pair<word, rational>> dual(const word& a) const
    {
        word v;
        for (int x : a) v.push_back(static_cast<int>(G_.hc().g().index_of(H_.pair().g().element(static_cast<std::size_t>(x)).label)));
        std::vector<std::pair<word, rational>> out;
        for (const auto& [s, c] : G_.hc().U().psi_inverse(G_.hc().U().normalize(v)))
            out.emplace_back(s, rational(c * multiplicity_factorial(s)));
        return out;
    }

    hc_table project(const hc_functional& phi) const
    {
        const series& f = phi.at(word{});
        hc_table t = H_.empty(1, phi.order);
        for (const auto& a : H_.monomials()) {
            if (a.size() > phi.order) continue;
            series v(H_.ring(), exact);
            for (const auto& [s, c] : dual(a)) v += c * coefficient(f, {s});
            t.set({a}, v);
        }
        return t;
    }

    hc_table project2(const hc_table& T) const
    {
        const series& f = T.at({word{}, word{}});
        hc_table t = H_.empty(2, T.order);
        for (const auto& key : table_keys(H_.monomials(), 2, T.order)) {
            series v(H_.ring(), exact);
            for (const auto& [s, c] : dual(key[0]))
                for (const auto& [u, d] : dual(key[1])) v += rational(c * d) * coefficient(f, {s, u});
            t.set(key, v);
        }
        return t;
    }

    // Left-invariant derivatives at the identity: the full table at w = 0.
    hc_table project_by_derivatives(const hc_functional& phi) const
    {
        auto T = G_.hc().table(phi);
        hc_table t = H_.empty(1, phi.order);
        for (const auto& a : H_.monomials()) {
            if (a.size() > phi.order) continue;
            word v;
            for (int x : a) v.push_back(static_cast<int>(G_.hc().g().index_of(H_.pair().g().element(static_cast<std::size_t>(x)).label)));
            series val(H_.ring(), exact);
            for (const auto& [w, c] : G_.hc().U().normalize(v)) val += c * G_.hc().at_identity(T.at({w}));
            t.set({a}, val.with_trunc(exact));
        }
        return t;
    }

    // Rank of the images of the coordinate monomials w^b, |b| <= N, against the
    // number of admissible monomials of length <= N.
    std::pair<std::size_t, std::size_t> surjectivity() const
    {
        const auto& hc = G_.hc();
        std::vector<std::vector<rational>> rows;
        for (const auto& s : hc.U().admissible_monomials(G_.order())) {
            series m(hc.ring(1), hc.trunc(G_.order()));
            m.add_term([&] {
                exponents e(hc.ring(1)->size(), 0);
                for (int x : s) ++e[hc.nb() + static_cast<std::size_t>(x)];
                return e;
            }(), rational(1));
            auto t = project(hc.make({{word{}, m}}, G_.order()));
            std::vector<rational> row;
            for (const auto& a : H_.monomials()) row.push_back(t.at({a}).constant_term());
            rows.push_back(std::move(row));
        }
        return {H_.monomials().size(), rank(std::move(rows))};
    }

private:
    const action_hc& G_;
    const action_hopf& H_;
};

// ---- jets on affine space ---------------------------------------------------------

// E = TM on d-dimensional affine space: generators d_z (or d_z1, ...), anchor the identity.
inline lie_rinehart_pair tangent_pair(std::size_t d)
{
    if (d < 1) throw input_error("dimension must be at least 1");
    std::vector<variable> vars;
    std::vector<basis_element> gens;
    for (std::size_t i = 0; i < d; ++i) {
        std::string z = d == 1 ? "z" : "z" + std::to_string(i + 1);
        vars.push_back({z, 0, 0, false});
        gens.push_back({"d_" + z, 0, 0});
    }
    auto R = make_ring(vars);
    std::map<std::string, vector_field> anchor;
    for (std::size_t i = 0; i < d; ++i) {
        vector_field X{std::vector<series>(d, series(R, exact))};
        X.coeff[i] = series::constant(R, exact, rational(1));
        anchor["d_" + vars[i].name] = X;
    }
    return lie_rinehart_pair(builtin::abelian(gens, "tangent" + std::to_string(d)), R, anchor);
}

// sum f1 j(f2)
struct jet_element {
    std::vector<std::pair<series, series>> terms;
};

class jet_space {
public:
    jet_space(std::size_t d, unsigned order) : H_(tangent_pair(d), order) {}

    const action_hopf& hopf() const { return H_; }
    const lie_rinehart_pair& pair() const { return H_.pair(); }

    hc_table j(const series& f) const { return H_.eta_r(f); }
    hc_table canonical(const jet_element& x) const
    {
        hc_table out = H_.empty(1, H_.order());
        for (const auto& [f1, f2] : x.terms) out = out + H_.product(H_.eta_l(f1), j(f2));
        return out;
    }
    // f1 j(f2) -> f2 j(f1)
    jet_element antipode(const jet_element& x) const
    {
        jet_element out;
        for (const auto& [f1, f2] : x.terms) out.terms.emplace_back(f2, f1);
        return out;
    }
    // (f1 j(f2)) (g1 j(g2)) = f1 g1 j(f2 g2)
    jet_element mul(const jet_element& x, const jet_element& y) const
    {
        jet_element out;
        for (const auto& [f1, f2] : x.terms)
            for (const auto& [g1, g2] : y.terms) out.terms.emplace_back(f1 * g1, f2 * g2);
        return out;
    }
    // <p, phi> = sum_A p_A phi(A)
    series pairing(const ure_element& p, const hc_table& phi) const
    {
        series out(H_.ring(), exact);
        for (const auto& [w, c] : p) {
            if (w.size() > phi.order) throw input_error("operator order exceeds the jet truncation");
            out += c * phi.at({w});
        }
        return out;
    }
    series pairing(const ure_element& p, const jet_element& x) const { return pairing(p, canonical(x)); }

private:
    action_hopf H_;
};

}  // namespace grhopf

#endif
