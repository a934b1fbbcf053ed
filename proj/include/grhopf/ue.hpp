// The universal enveloping algebra: PBW normal forms, Hopf structure,
// symmetrization and the U(h) (x) Sym(m) factorization.
#ifndef GRHOPF_UE_HPP
#define GRHOPF_UE_HPP

#include "lie.hpp"

#include <array>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>

namespace grhopf {

using word = std::vector<int>;
using word_pair = std::pair<word, word>;
using word_triple = std::array<word, 3>;

struct u_tag {};
struct sym_tag {};

using u_element = lincomb<word, rational, u_tag>;
using sym_element = lincomb<word, rational, sym_tag>;
using u_tensor = lincomb<word_pair, rational, u_tag>;
using u_tensor3 = lincomb<word_triple, rational, u_tag>;
using sym_tensor = lincomb<word_pair, rational, sym_tag>;

struct word_hash {
    std::size_t operator()(const word& w) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : w) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
        return h;
    }
};

enum class rewrite_strategy { leftmost, rightmost, random };

// Sign and sub-words for the shuffle coproduct of y_1...y_m: every subset S of
// positions goes to the left leg (in order), the rest to the right.
template <class F>
void for_each_shuffle(const word& w, const std::vector<int>& parities, F&& f)
{
    const std::size_t m = w.size();
    if (m > 20) throw input_error("shuffle coproduct: word too long");
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        word left, right;
        std::vector<std::size_t> perm, rest;
        for (std::size_t k = 0; k < m; ++k) {
            if (mask >> k & 1) {
                left.push_back(w[k]);
                perm.push_back(k);
            } else {
                right.push_back(w[k]);
                rest.push_back(k);
            }
        }
        perm.insert(perm.end(), rest.begin(), rest.end());
        f(left, right, koszul_sign(perm, parities));
    }
}

class enveloping_algebra {
public:
    explicit enveloping_algebra(lie_algebra g) : g_(std::move(g)) {}
    enveloping_algebra(const enveloping_algebra& o) : g_(o.g_) {}

    const lie_algebra& lie() const { return g_; }

    int parity(const word& w) const
    {
        int p = 0;
        for (int x : w) p += g_.parity(static_cast<std::size_t>(x));
        return p & 1;
    }
    int degree(const word& w) const
    {
        int d = 0;
        for (int x : w) d += g_.degree(static_cast<std::size_t>(x));
        return d;
    }
    std::vector<int> parities(const word& w) const
    {
        std::vector<int> p;
        for (int x : w) p.push_back(g_.parity(static_cast<std::size_t>(x)));
        return p;
    }

    // Non-decreasing, odd generators at most once.
    bool is_admissible(const word& w) const
    {
        for (std::size_t k = 0; k + 1 < w.size(); ++k) {
            if (w[k] > w[k + 1]) return false;
            if (w[k] == w[k + 1] && g_.parity(static_cast<std::size_t>(w[k]))) return false;
        }
        return true;
    }

    u_element one() const { return u_element(word{}, rational(1)); }
    u_element gen(std::size_t i) const { return u_element(word{static_cast<int>(i)}, rational(1)); }
    u_element gen(std::string_view label) const { return gen(g_.index_of(label)); }
    u_element from_lie(const lie_vector& v) const
    {
        u_element u;
        for (const auto& [k, c] : v) u.add(word{static_cast<int>(k)}, c);
        return u;
    }
    u_element scalar(const rational& c) const { return u_element(word{}, c); }

    // Leftmost-redex normal form, memoized.
    u_element normalize(const word& w) const
    {
        check_word(w);
        std::size_t i = first_redex(w);
        if (i == npos) return u_element(w, rational(1));
        {
            std::lock_guard lock(mutex_);
            auto it = cache_.find(w);
            if (it != cache_.end()) return it->second;
        }
        u_element out;
        rewrite_at(w, i, [&](const word& v, const rational& c) { out.add(normalize(v), c); });
        std::lock_guard lock(mutex_);
        cache_.emplace(w, out);
        return out;
    }

    // Normal form under another reduction order (no memoization).
    u_element normalize(const word& w, rewrite_strategy s, std::mt19937* rng = nullptr) const
    {
        check_word(w);
        std::vector<std::size_t> redexes;
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (is_redex(w, k)) redexes.push_back(k);
        if (redexes.empty()) return u_element(w, rational(1));
        std::size_t i = redexes.front();
        if (s == rewrite_strategy::rightmost) i = redexes.back();
        if (s == rewrite_strategy::random) {
            if (!rng) throw input_error("random strategy needs a generator");
            i = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(*rng)];
        }
        u_element out;
        rewrite_at(w, i, [&](const word& v, const rational& c) { out.add(normalize(v, s, rng), c); });
        return out;
    }

    u_element normalize(const u_element& a) const
    {
        u_element out;
        for (const auto& [w, c] : a) out.add(normalize(w), c);
        return out;
    }

    u_element mul(const u_element& a, const u_element& b) const
    {
        u_element out;
        for (const auto& [wa, ca] : a)
            for (const auto& [wb, cb] : b) {
                word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                out.add(normalize(w), rational(ca * cb));
            }
        return out;
    }

    u_element power(const u_element& a, unsigned k) const
    {
        u_element r = one();
        for (unsigned i = 0; i < k; ++i) r = mul(r, a);
        return r;
    }

    // Graded commutator, split along parity.
    u_element commutator(const u_element& a, const u_element& b) const
    {
        u_element out = mul(a, b);
        for (int pa = 0; pa < 2; ++pa)
            for (int pb = 0; pb < 2; ++pb) {
                auto sa = parity_part(a, pa), sb = parity_part(b, pb);
                if (sa.empty() || sb.empty()) continue;
                out.add(mul(sb, sa), rational((pa & pb) ? 1 : -1));
            }
        return out;
    }

    u_element parity_part(const u_element& a, int p) const
    {
        u_element out;
        for (const auto& [w, c] : a)
            if (parity(w) == p) out.add(w, c);
        return out;
    }

    // Primitive generators, extended multiplicatively (shuffle formula).
    u_tensor coproduct(const u_element& a) const
    {
        u_tensor out;
        for (const auto& [w, c] : normalize(a)) {
            for_each_shuffle(w, parities(w), [&](const word& l, const word& r, int s) {
                out.add(word_pair{l, r}, s > 0 ? c : rational(-c));
            });
        }
        return out;
    }

    rational counit(const u_element& a) const
    {
        auto* c = a.find(word{});
        return c ? *c : rational(0);
    }

    // S(x_1...x_m) = (-1)^m (Koszul sign of reversal) x_m...x_1
    u_element antipode(const u_element& a) const
    {
        u_element out;
        for (const auto& [w, c] : a) {
            const std::size_t m = w.size();
            std::vector<std::size_t> rev(m);
            std::iota(rev.rbegin(), rev.rend(), std::size_t{0});
            int s = koszul_sign(rev, parities(w)) * ((m & 1) ? -1 : 1);
            word r(w.rbegin(), w.rend());
            out.add(normalize(r), s > 0 ? c : rational(-c));
        }
        return out;
    }

    // Full symmetrization (1/m!) sum_sigma eps(sigma) y_sigma(1)...y_sigma(m).
    u_element psi(const sym_element& s) const
    {
        u_element out;
        for (const auto& [w, c] : s) out.add(psi_monomial(w), c);
        return out;
    }

    u_element psi_monomial(const word& w) const
    {
        {
            std::lock_guard lock(mutex_);
            auto it = psi_cache_.find(w);
            if (it != psi_cache_.end()) return it->second;
        }
        const std::size_t m = w.size();
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        const auto par = parities(w);
        u_element out;
        const rational inv = 1 / factorial(static_cast<unsigned>(m));
        do {
            word v(m);
            for (std::size_t k = 0; k < m; ++k) v[k] = w[perm[k]];
            out.add(normalize(v), rational(inv * koszul_sign(perm, par)));
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::lock_guard lock(mutex_);
        psi_cache_.emplace(w, out);
        return out;
    }

    // Back-substitution along the unitriangular change of basis, longest first.
    sym_element psi_inverse(const u_element& a) const
    {
        sym_element out;
        u_element rest = normalize(a);
        while (!rest.empty()) {
            auto it = std::max_element(rest.begin(), rest.end(), [](const auto& x, const auto& y) {
                return x.first.size() != y.first.size() ? x.first.size() < y.first.size() : x.first > y.first;
            });
            word w = it->first;
            rational c = it->second;
            out.add(w, c);
            rest.add(psi_monomial(w), rational(-c));
        }
        return out;
    }

    sym_tensor sym_coproduct(const sym_element& s) const
    {
        sym_tensor out;
        for (const auto& [w, c] : s)
            for_each_shuffle(w, parities(w), [&](const word& l, const word& r, int sg) {
                out.add(word_pair{l, r}, sg > 0 ? c : rational(-c));
            });
        return out;
    }

    // Tensor-level maps used by the axiom checks.
    u_tensor tensor_mul(const u_tensor& x, const u_tensor& y) const
    {
        u_tensor out;
        for (const auto& [px, cx] : x)
            for (const auto& [py, cy] : y) {
                int s = (parity(px.second) & parity(py.first)) ? -1 : 1;
                auto l = mul(u_element(px.first, rational(1)), u_element(py.first, rational(1)));
                auto r = mul(u_element(px.second, rational(1)), u_element(py.second, rational(1)));
                rational c = cx * cy * s;
                for (const auto& [wl, cl] : l)
                    for (const auto& [wr, cr] : r) out.add(word_pair{wl, wr}, rational(c * cl * cr));
            }
        return out;
    }
    u_tensor3 delta_id(const u_tensor& t) const
    {
        u_tensor3 out;
        for (const auto& [p, c] : t)
            for (const auto& [q, d] : coproduct(u_element(p.first, rational(1))))
                out.add(word_triple{q.first, q.second, p.second}, rational(c * d));
        return out;
    }
    u_tensor3 id_delta(const u_tensor& t) const
    {
        u_tensor3 out;
        for (const auto& [p, c] : t)
            for (const auto& [q, d] : coproduct(u_element(p.second, rational(1))))
                out.add(word_triple{p.first, q.first, q.second}, rational(c * d));
        return out;
    }
    u_element counit_id(const u_tensor& t) const
    {
        u_element out;
        for (const auto& [p, c] : t)
            if (p.first.empty()) out.add(p.second, c);
        return out;
    }
    u_element id_counit(const u_tensor& t) const
    {
        u_element out;
        for (const auto& [p, c] : t)
            if (p.second.empty()) out.add(p.first, c);
        return out;
    }
    template <class Left, class Right>
    u_element mu_apply(const u_tensor& t, Left&& fl, Right&& fr) const
    {
        u_element out;
        for (const auto& [p, c] : t)
            out.add(mul(fl(u_element(p.first, rational(1))), fr(u_element(p.second, rational(1)))), c);
        return out;
    }

    // All admissible monomials of length <= max_len, by length then lexicographically.
    std::vector<word> admissible_monomials(std::size_t max_len) const
    {
        std::vector<word> out{word{}};
        std::vector<word> layer{word{}};
        for (std::size_t len = 1; len <= max_len; ++len) {
            std::vector<word> next;
            for (const auto& w : layer) {
                int start = w.empty() ? 0 : w.back();
                for (int k = start; k < static_cast<int>(g_.dim()); ++k) {
                    if (!w.empty() && k == w.back() && g_.parity(static_cast<std::size_t>(k))) continue;
                    word v = w;
                    v.push_back(k);
                    next.push_back(std::move(v));
                }
            }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void check_word(const word& w) const
    {
        for (int x : w)
            if (x < 0 || static_cast<std::size_t>(x) >= g_.dim()) throw input_error("word uses an unknown generator");
    }
    bool is_redex(const word& w, std::size_t k) const
    {
        return w[k] > w[k + 1] || (w[k] == w[k + 1] && g_.parity(static_cast<std::size_t>(w[k])));
    }
    std::size_t first_redex(const word& w) const
    {
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
            if (is_redex(w, k)) return k;
        return npos;
    }

    // One rewrite at position i: y x -> (-1)^{p(x)p(y)} x y + [y,x], x x -> 1/2 [x,x] for odd x.
    template <class Emit>
    void rewrite_at(const word& w, std::size_t i, Emit&& emit) const
    {
        const auto y = static_cast<std::size_t>(w[i]), x = static_cast<std::size_t>(w[i + 1]);
        auto spliced = [&](int k) {
            word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            v.push_back(k);
            v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            return v;
        };
        const auto& br = g_.structure(y, x);
        if (x == y) {
            for (const auto& [k, c] : br) emit(spliced(static_cast<int>(k)), rational(c / 2));
            return;
        }
        word v = w;
        std::swap(v[i], v[i + 1]);
        emit(v, rational((g_.parity(x) & g_.parity(y)) ? -1 : 1));
        for (const auto& [k, c] : br) emit(spliced(static_cast<int>(k)), c);
    }

    lie_algebra g_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<word, u_element, word_hash> cache_;
    mutable std::unordered_map<word, u_element, word_hash> psi_cache_;
};

inline std::size_t admissible_count(const enveloping_algebra& U, std::size_t max_len)
{
    return U.admissible_monomials(max_len).size();
}
inline std::size_t admissible_count(const lie_algebra& g, std::size_t max_len)
{
    return admissible_count(enveloping_algebra(g), max_len);
}

// Rank over Q of the normal forms of every word of length <= max_len.
inline std::size_t pbw_rank_oracle(const lie_algebra& g, std::size_t max_len, std::size_t* word_count = nullptr)
{
    enveloping_algebra U(g);
    std::vector<word> words{word{}}, layer{word{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<word> next;
        for (const auto& w : layer)
            for (int k = 0; k < static_cast<int>(g.dim()); ++k) {
                word v = w;
                v.push_back(k);
                next.push_back(std::move(v));
            }
        words.insert(words.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    if (word_count) *word_count = words.size();
    std::vector<u_element> forms;
    std::map<word, std::size_t> column;
    for (const auto& w : words) {
        forms.push_back(U.normalize(w, rewrite_strategy::leftmost));
        for (const auto& [m, c] : forms.back()) column.emplace(m, 0);
    }
    std::size_t j = 0;
    for (auto& [m, idx] : column) idx = j++;
    std::vector<std::vector<rational>> mat(forms.size(), std::vector<rational>(column.size()));
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (const auto& [m, c] : forms[i]) mat[i][column[m]] = c;
    return rank(std::move(mat));
}

using hc_split = lincomb<word_pair, rational, struct hc_split_tag>;

inline std::vector<std::size_t> indices_of(const lie_algebra& g, const std::vector<std::string>& labels)
{
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(g.index_of(l));
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Checks that h is a subalgebra placed in front of its complement.
inline void check_leading_subalgebra(const lie_algebra& g, const std::vector<std::size_t>& h)
{
    if (!is_closed(g, h)) throw input_error("hc_factorize: h is not a subalgebra");
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h[k] != k) throw input_error("hc_factorize: the basis order must put h before its complement");
}

// a = sum_i a_i psi(s_i), a_i in U(h), s_i in Sym(m). Keys are (h-word, m-monomial).
inline hc_split hc_factorize(const enveloping_algebra& U, const u_element& a, const std::vector<std::size_t>& h)
{
    check_leading_subalgebra(U.lie(), h);
    const int nh = static_cast<int>(h.size());
    auto split = [nh](const word& w) {
        auto it = std::find_if(w.begin(), w.end(), [nh](int x) { return x >= nh; });
        return word_pair{word(w.begin(), it), word(it, w.end())};
    };
    hc_split out;
    u_element rest = U.normalize(a);
    while (!rest.empty()) {
        auto it = std::max_element(rest.begin(), rest.end(), [&](const auto& x, const auto& y) {
            auto sx = split(x.first).second.size(), sy = split(y.first).second.size();
            return sx != sy ? sx < sy : x.first > y.first;
        });
        auto [hw, mw] = split(it->first);
        rational c = it->second;
        out.add(word_pair{hw, mw}, c);
        rest.add(U.mul(u_element(hw, rational(1)), U.psi_monomial(mw)), rational(-c));
    }
    return out;
}

inline u_element hc_recombine(const enveloping_algebra& U, const hc_split& s)
{
    u_element out;
    for (const auto& [p, c] : s) out.add(U.mul(u_element(p.first, rational(1)), U.psi_monomial(p.second)), c);
    return out;
}

// Coideal side of the filtration: Delta(s) in Sym (x) Sym_{<p}.
inline bool filtration_member_coideal(const enveloping_algebra& U, const sym_element& s, unsigned p)
{
    for (const auto& [pr, c] : U.sym_coproduct(s))
        if (U.degree(pr.second) >= static_cast<int>(p)) return false;
    return true;
}

// Monomial basis of the degree-d component of F_p Sym(E). Needs E without a degree-0 part.
inline std::vector<word> coideal_component_basis(const enveloping_algebra& U, unsigned p, int d)
{
    const auto& g = U.lie();
    for (const auto& e : g.basis())
        if (e.degree == 0) throw input_error("coideal component: generators of degree 0 give infinite components");
    // the positive part stays below p, so the negative part is at least d - (p - 1)
    const int neg_floor = d - static_cast<int>(p) + 1;
    std::vector<word> out;
    word cur;
    std::function<void(int, int, int)> rec = [&](int start, int pos, int neg) {
        if (pos + neg == d && filtration_member_coideal(U, sym_element(cur, rational(1)), p)) out.push_back(cur);
        for (int k = start; k < static_cast<int>(g.dim()); ++k) {
            const int dk = g.degree(static_cast<std::size_t>(k));
            if (!cur.empty() && cur.back() == k && g.parity(static_cast<std::size_t>(k))) continue;
            int np = pos + std::max(dk, 0), nn = neg + std::min(dk, 0);
            if (np >= static_cast<int>(p) || nn < neg_floor) continue;
            cur.push_back(k);
            rec(k, np, nn);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    return out;
}

}  // namespace grhopf

#endif
