// Baker-Campbell-Hausdorff in Dynkin's form, a free associative oracle,
// the formal group law on dual coordinates and the dual admissible basis.
#ifndef GRHOPF_BCH_HPP
#define GRHOPF_BCH_HPP

#include "poly.hpp"
#include "ue.hpp"

namespace grhopf {

// Letters of the free setting: 0 = u, 1 = v.
using free_word = std::vector<int>;

// Right-nested brackets [a1,[a2,[...,ak]]] keyed by their letter sequence.
using lie_series = lincomb<free_word, rational, struct lie_series_tag>;
// Plain associative words in u, v.
using assoc_series = lincomb<free_word, rational, struct assoc_series_tag>;

inline std::size_t word_length(const lie_series& s)
{
    std::size_t n = 0;
    for (const auto& [w, c] : s) n = std::max(n, w.size());
    return n;
}

// Dynkin's sum: sequences (r_1,s_1),...,(r_n,s_n) with r_i + s_i >= 1 and total
// length L <= N, weighted by (-1)^{n-1}/n / (L prod r_i! s_i!). Terms that vanish
// as brackets are kept; they evaluate to zero.
inline lie_series dynkin_series(unsigned N)
{
    if (N < 1) throw input_error("BCH order must be at least 1");
    lie_series out;
    free_word w;
    std::function<void(unsigned, unsigned, rational)> rec = [&](unsigned n, unsigned len, rational denom) {
        if (n > 0) {
            rational c = rational((n & 1) ? 1 : -1, n) / (denom * len);
            c.canonicalize();
            out.add(w, c);
        }
        for (unsigned r = 0; len + r <= N; ++r)
            for (unsigned s = (r == 0 ? 1 : 0); len + r + s <= N; ++s) {
                std::size_t mark = w.size();
                w.insert(w.end(), r, 0);
                w.insert(w.end(), s, 1);
                rec(n + 1, len + r + s, denom * factorial(r) * factorial(s));
                w.resize(mark);
            }
    };
    rec(0, 0, rational(1));
    return out;
}

// [a, rest] -> a*E(rest) - E(rest)*a, recursively.
inline assoc_series expand(const free_word& w)
{
    if (w.empty()) throw input_error("empty bracket word");
    assoc_series cur(free_word{w.back()}, rational(1));
    for (std::size_t k = w.size() - 1; k-- > 0;) {
        assoc_series next;
        for (const auto& [x, c] : cur) {
            free_word l{w[k]}, r = x;
            l.insert(l.end(), x.begin(), x.end());
            r.push_back(w[k]);
            next.add(l, c);
            next.add(r, rational(-c));
        }
        cur = std::move(next);
    }
    return cur;
}

inline assoc_series expand(const lie_series& s)
{
    assoc_series out;
    for (const auto& [w, c] : s) out.add(expand(w), c);
    return out;
}

inline assoc_series assoc_mul(const assoc_series& a, const assoc_series& b, std::size_t N)
{
    assoc_series out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) {
            if (x.size() + y.size() > N) continue;
            free_word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out.add(w, rational(cx * cy));
        }
    return out;
}

// log(exp(U) exp(V)) in the free associative algebra, words of length <= N.
inline assoc_series bch_oracle(unsigned N)
{
    if (N < 1) throw input_error("BCH order must be at least 1");
    if (N > 8) throw input_error("bch_oracle: order above 8 is too expensive");
    assoc_series x;  // exp(U) exp(V) - 1
    for (unsigned i = 0; i <= N; ++i)
        for (unsigned j = 0; i + j <= N; ++j) {
            if (i + j == 0) continue;
            free_word w(i, 0);
            w.insert(w.end(), j, 1);
            x.add(w, rational(1) / (factorial(i) * factorial(j)));
        }
    assoc_series out, power = x;
    for (unsigned k = 1; k <= N; ++k) {
        out.add(power, rational((k & 1) ? 1 : -1, k));
        power = assoc_mul(power, x, N);
    }
    return out;
}

namespace detail {
// Reduced echelon form for expressing vectors in a growing span.
struct span_builder {
    std::vector<std::map<free_word, rational>> rows;  // reduced rows with pivot = first key
    std::vector<std::map<std::size_t, rational>> how;  // row as a combination of inserted vectors
    std::size_t inserted = 0;

    // Reduce v; returns the remainder and the combination used.
    std::pair<std::map<free_word, rational>, std::map<std::size_t, rational>> reduce(
        std::map<free_word, rational> v) const
    {
        std::map<std::size_t, rational> comb;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& piv = rows[r].begin()->first;
            auto it = v.find(piv);
            if (it == v.end()) continue;
            rational f = it->second / rows[r].begin()->second;
            for (const auto& [k, c] : rows[r]) {
                auto& t = v[k];
                t -= f * c;
                if (is_zero(t)) v.erase(k);
            }
            for (const auto& [k, c] : how[r]) {
                auto& t = comb[k];
                t += f * c;
                if (is_zero(t)) comb.erase(k);
            }
        }
        return {v, comb};
    }
    bool insert(const std::map<free_word, rational>& v)
    {
        auto [rem, comb] = reduce(v);
        std::size_t id = inserted++;
        if (rem.empty()) return false;
        std::map<std::size_t, rational> h;
        for (const auto& [k, c] : comb) h[k] = -c;
        h[id] += 1;
        rows.push_back(std::move(rem));
        how.push_back(std::move(h));
        return true;
    }
};
}  // namespace detail

// Rewrites a free Lie series in the right-nested bracket words that are kept
// greedily (lexicographic order) as long as their expansions stay independent.
// Throws if the input does not lie in the free Lie algebra.
inline lie_series reduce_free_lie(const lie_series& s)
{
    const std::size_t N = word_length(s);
    const assoc_series target = expand(s);
    lie_series out;
    for (std::size_t len = 1; len <= N; ++len) {
        std::map<free_word, rational> part;
        for (const auto& [w, c] : target)
            if (w.size() == len) part[w] = c;
        if (part.empty()) continue;
        detail::span_builder span;
        std::vector<free_word> kept;
        for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
            free_word w(len);
            for (std::size_t k = 0; k < len; ++k) w[k] = static_cast<int>(mask >> (len - 1 - k) & 1);
            const auto ex = expand(w);
            std::map<free_word, rational> v(ex.begin(), ex.end());
            if (v.empty()) continue;
            if (span.insert(v)) kept.push_back(w);
        }
        // a second pass over the kept words only, so combination ids index `kept`
        {
            detail::span_builder again;
            for (const auto& w : kept) {
                const auto ex = expand(w);
                again.insert(std::map<free_word, rational>(ex.begin(), ex.end()));
            }
            auto [rem, comb] = again.reduce(part);
            if (!rem.empty()) throw input_error("series is not a Lie element");
            // part = sum_r f_r row_r and row_r = sum_k how[r][k] kept_k
            // reduce() already returned sum_r f_r how[r] in comb
            for (const auto& [k, c] : comb) out.add(kept[k], c);
        }
    }
    return out;
}

inline std::string to_string(const free_word& w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ",";
        if (k + 1 < w.size()) s += "[";
        s += w[k] == 0 ? "u" : "v";
    }
    for (std::size_t k = 1; k < w.size(); ++k) s += "]";
    return s;
}

// Shortest brackets first, then lexicographic.
inline std::string to_string(const lie_series& s)
{
    std::vector<std::pair<free_word, rational>> terms(s.begin(), s.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
    });
    std::string out;
    for (const auto& [w, c] : terms) detail::append_term(out, c, to_string(w));
    return out.empty() ? "0" : out;
}

inline std::string to_string(const assoc_series& s)
{
    std::vector<std::pair<free_word, rational>> terms(s.begin(), s.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a.first.size() != b.first.size() ? a.first.size() < b.first.size() : a.first < b.first;
    });
    std::string out;
    for (const auto& [w, c] : terms) {
        std::string mono;
        for (int x : w) mono += std::string(mono.empty() ? "" : "*") + (x == 0 ? "U" : "V");
        detail::append_term(out, c, mono);
    }
    return out.empty() ? "0" : out;
}

// Evaluates every bracket word of the series on u, v in g; suffixes are shared.
template <class C>
lie_vec<C> evaluate(const lie_algebra& g, const lie_series& s, const lie_vec<C>& u, const lie_vec<C>& v)
{
    std::map<free_word, lie_vec<C>> memo;
    std::function<const lie_vec<C>&(const free_word&)> value = [&](const free_word& w) -> const lie_vec<C>& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        const lie_vec<C>& head = w.front() == 0 ? u : v;
        lie_vec<C> r;
        if (w.size() == 1)
            r = head;
        else
            r = bracket(g, head, value(free_word(w.begin() + 1, w.end())));
        return memo.emplace(w, std::move(r)).first->second;
    };
    lie_vec<C> out;
    for (const auto& [w, c] : s)
        for (const auto& [k, x] : value(w)) out.add(k, C(c * x));
    return out;
}

template <class C>
lie_vec<C> dynkin_bch(const lie_algebra& g, const lie_vec<C>& u, const lie_vec<C>& v, unsigned N)
{
    return evaluate(g, dynkin_series(N), u, v);
}

// Generic coordinate vector sum_a x_a w^a with coordinates names prefix + label.
inline lie_vec<series> coordinate_vector(const lie_algebra& g, const ring_ptr& ring, truncation t,
                                         const std::string& prefix)
{
    lie_vec<series> out;
    for (std::size_t a = 0; a < g.dim(); ++a) out.add(a, series::var(ring, t, prefix + g.element(a).label));
    return out;
}

// Dual coordinates: degree -deg(x), parity p(x).
inline std::vector<variable> dual_coordinates(const lie_algebra& g, const std::string& prefix)
{
    std::vector<variable> vars;
    for (const auto& e : g.basis()) vars.push_back({prefix + e.label, -e.degree, e.parity, true});
    return vars;
}

inline std::vector<series> components(const lie_algebra& g, const lie_vec<series>& x, const ring_ptr& ring,
                                      truncation t)
{
    std::vector<series> out(g.dim(), series(ring, t));
    for (const auto& [k, c] : x) out[k] = c.with_trunc(t);
    return out;
}

// Delta(u^a) = Z^a(u, v) on the ring (u_<label>..., v_<label>...).
struct formal_group_law {
    lie_algebra g;
    unsigned order = 0;
    ring_ptr ring;                  // u coordinates then v coordinates
    std::vector<series> component;  // Z^a, one per generator
};

inline formal_group_law formal_group_coproduct(const lie_algebra& g, unsigned N)
{
    if (N < 1) throw input_error("formal group order must be at least 1");
    auto vars = dual_coordinates(g, "u_");
    auto vv = dual_coordinates(g, "v_");
    vars.insert(vars.end(), vv.begin(), vv.end());
    auto ring = make_ring(vars);
    truncation t{N, unbounded};
    auto Z = dynkin_bch(g, coordinate_vector(g, ring, t, "u_"), coordinate_vector(g, ring, t, "v_"), N);
    return {g, N, ring, components(g, Z, ring, t)};
}

// Z(Z(u,v),w) - Z(u,Z(v,w)) componentwise, over the ring u, v, w.
inline std::vector<series> group_law_associativity_residual(const lie_algebra& g, unsigned N)
{
    auto law = formal_group_coproduct(g, N);
    auto vars = dual_coordinates(g, "u_");
    for (const char* p : {"v_", "w_"}) {
        auto more = dual_coordinates(g, p);
        vars.insert(vars.end(), more.begin(), more.end());
    }
    auto ring = make_ring(vars);
    truncation t{N, unbounded};
    const std::size_t n = g.dim();
    auto coord = [&](std::size_t block, std::size_t a) { return series::var(ring, t, block * n + a); };
    // Z(u, v) and Z(v, w) over the big ring
    std::vector<series> uv_img, vw_img;
    for (std::size_t a = 0; a < n; ++a) uv_img.push_back(coord(0, a));
    for (std::size_t a = 0; a < n; ++a) uv_img.push_back(coord(1, a));
    for (std::size_t a = 0; a < n; ++a) vw_img.push_back(coord(1, a));
    for (std::size_t a = 0; a < n; ++a) vw_img.push_back(coord(2, a));
    std::vector<series> zuv, zvw;
    for (const auto& c : law.component) {
        zuv.push_back(c.substitute(uv_img, ring, t));
        zvw.push_back(c.substitute(vw_img, ring, t));
    }
    std::vector<series> left_img = zuv, right_img;
    for (std::size_t a = 0; a < n; ++a) left_img.push_back(coord(2, a));
    for (std::size_t a = 0; a < n; ++a) right_img.push_back(coord(0, a));
    right_img.insert(right_img.end(), zvw.begin(), zvw.end());
    std::vector<series> out;
    for (const auto& c : law.component) out.push_back(c.substitute(left_img, ring, t) - c.substitute(right_img, ring, t));
    return out;
}

// Sign of writing u^{b_m}...u^{b_1} in ascending variable order: the reversal of
// the odd factors.
inline int reversal_sign(const enveloping_algebra& U, const word& w)
{
    std::size_t odd = 0;
    for (int x : w) odd += static_cast<std::size_t>(U.lie().parity(static_cast<std::size_t>(x)));
    return (odd * (odd - (odd > 0 ? 1 : 0)) / 2) % 2 ? -1 : 1;
}

inline exponents exponents_of(const word& w, std::size_t n)
{
    exponents e(n, 0);
    for (int x : w) ++e.at(static_cast<std::size_t>(x));
    return e;
}

// Entry for an admissible B: the dual monomial (1/|B|!) u^{b_m}...u^{b_1} over
// the ring of u coordinates, as a series.
struct dual_entry {
    word monomial;
    series dual;
};

inline rational multiplicity_factorial(const word& w)
{
    rational f = 1;
    std::size_t k = 0;
    while (k < w.size()) {
        std::size_t j = k;
        while (j < w.size() && w[j] == w[k]) ++j;
        f *= factorial(static_cast<unsigned>(j - k));
        k = j;
    }
    return f;
}

inline std::vector<dual_entry> exp_dual_expansion(const lie_algebra& g, unsigned N)
{
    enveloping_algebra U(g);
    auto ring = make_ring(dual_coordinates(g, "u_"));
    truncation t{N, unbounded};
    std::vector<dual_entry> out;
    for (const auto& w : U.admissible_monomials(N)) {
        series s(ring, t);
        s.add_term(exponents_of(w, g.dim()), rational(reversal_sign(U, w)) / multiplicity_factorial(w));
        out.push_back({w, std::move(s)});
    }
    return out;
}

// Independent check of the table: expand exp(sum_a x_a u^a) as U(g)-valued
// coefficients of the canonical u-monomials, map each through psi^{-1} and
// compare with the table. Returns the monomials that disagree.
inline std::vector<word> exp_dual_mismatches(const lie_algebra& g, unsigned N)
{
    enveloping_algebra U(g);
    const std::size_t n = g.dim();
    // coefficient (in U) of every canonical u-monomial, from sequences b_1..b_m
    std::map<exponents, u_element> coeff;
    coeff[exponents(n, 0)] = U.one();
    std::vector<int> seq;
    std::function<void()> rec = [&]() {
        if (!seq.empty()) {
            // x_{b1} u^{b1} ... x_{bm} u^{bm} = s * x_{b1}...x_{bm} u^{b1}...u^{bm}
            int sign = 1;
            for (std::size_t i = 0; i < seq.size(); ++i)
                for (std::size_t j = i + 1; j < seq.size(); ++j)
                    if (g.parity(static_cast<std::size_t>(seq[i])) & g.parity(static_cast<std::size_t>(seq[j])))
                        sign = -sign;
            // u^{b1}...u^{bm} to canonical order: sort, Koszul sign; zero if an odd repeats
            std::vector<std::size_t> perm(seq.size());
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::stable_sort(perm.begin(), perm.end(), [&](auto a, auto b) { return seq[a] < seq[b]; });
            std::vector<int> par;
            for (int x : seq) par.push_back(g.parity(static_cast<std::size_t>(x)));
            bool zero = false;
            for (std::size_t k = 0; k + 1 < perm.size(); ++k)
                if (seq[perm[k]] == seq[perm[k + 1]] && par[perm[k]]) zero = true;
            if (!zero) {
                sign *= koszul_sign(perm, par);
                rational c = rational(sign) / factorial(static_cast<unsigned>(seq.size()));
                coeff[exponents_of(seq, n)].add(U.normalize(seq), c);
            }
        }
        if (seq.size() == N) return;
        for (int a = 0; a < static_cast<int>(n); ++a) {
            seq.push_back(a);
            rec();
            seq.pop_back();
        }
    };
    rec();
    std::vector<word> bad;
    for (const auto& entry : exp_dual_expansion(g, N)) {
        const exponents e = exponents_of(entry.monomial, n);
        sym_element expect(entry.monomial, entry.dual.coefficient(e));
        auto it = coeff.find(e);
        sym_element got = it == coeff.end() ? sym_element{} : U.psi_inverse(it->second);
        if (!(got == expect)) bad.push_back(entry.monomial);
    }
    return bad;
}

}  // namespace grhopf

#endif
