// Exact rationals, graded generators, orderings and Koszul signs.
#ifndef GRHOPF_CORE_HPP
#define GRHOPF_CORE_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace grhopf {

using rational = mpq_class;

// Malformed input: bad files, unknown labels, violated preconditions.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline rational make_rational(long p, long q = 1)
{
    if (q == 0) throw input_error("zero denominator");
    rational r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_zero(const rational& r) { return sgn(r) == 0; }

// "p/q", or "p" when q = 1.
inline std::string to_string(const rational& r) { return r.get_str(); }

inline rational parse_rational(std::string_view s)
{
    auto digits = [](std::string_view t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw input_error("malformed rational '" + std::string(s) + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw input_error("zero denominator in '" + std::string(s) + "'");
    if (s.front() == '-') n = -n;
    rational r(n, d);
    r.canonicalize();
    return r;
}

inline rational factorial(unsigned n)
{
    mpz_class f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return rational(f);
}

struct basis_element {
    std::string label;
    int degree = 0;
    int parity = 0;  // 0 even, 1 odd; not tied to degree

    bool operator==(const basis_element&) const = default;
};

// Total order on generators. Elements listed in `leading` come first (used to
// put a subalgebra in front); within each block the degree-0 generators come
// first, then ascending degree, then label.
struct basis_order {
    std::vector<std::string> leading;

    bool operator==(const basis_order&) const = default;

    auto key(const basis_element& a) const
    {
        bool lead = std::find(leading.begin(), leading.end(), a.label) != leading.end();
        return std::make_tuple(!lead, a.degree != 0, a.degree, std::string_view(a.label));
    }
};

inline std::strong_ordering compare(const basis_element& a, const basis_element& b, const basis_order& order = {})
{
    return order.key(a) <=> order.key(b);
}

// Sign picked up when the items 0..m-1 are rearranged into the sequence
// perm[0], perm[1], ...; each crossing of two odd items contributes -1.
inline int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& parities)
{
    const std::size_t m = perm.size();
    if (parities.size() != m) throw input_error("koszul_sign: permutation and parity lengths differ");
    std::vector<bool> seen(m, false);
    for (auto p : perm) {
        if (p >= m || seen[p]) throw input_error("koszul_sign: not a permutation");
        seen[p] = true;
    }
    // bubble sort, counting odd-odd swaps
    std::vector<std::size_t> w = perm;
    int sign = 1;
    for (std::size_t pass = 0; pass < m; ++pass)
        for (std::size_t k = 0; k + 1 < m - pass; ++k)
            if (w[k] > w[k + 1]) {
                if ((parities[w[k]] & parities[w[k + 1]]) != 0) sign = -sign;
                std::swap(w[k], w[k + 1]);
            }
    return sign;
}

// Finite linear combination with no zero coefficients stored.
template <class Key, class Coeff, class Tag = void>
class lincomb {
public:
    using key_type = Key;
    using coeff_type = Coeff;
    using map_type = std::map<Key, Coeff>;

    lincomb() = default;
    lincomb(const Key& k, Coeff c) { add(k, std::move(c)); }

    void add(const Key& k, const Coeff& c)
    {
        if (is_zero(c)) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second += c;
        if (is_zero(it->second)) terms_.erase(it);
    }
    void add(const lincomb& o, const rational& s)
    {
        for (const auto& [k, c] : o.terms_) add(k, Coeff(s * c));
    }

    const map_type& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    const Coeff* find(const Key& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? nullptr : &it->second;
    }

    lincomb& operator+=(const lincomb& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    lincomb& operator-=(const lincomb& o)
    {
        for (const auto& [k, c] : o.terms_) add(k, Coeff(-c));
        return *this;
    }
    friend lincomb operator+(lincomb a, const lincomb& b) { return a += b; }
    friend lincomb operator-(lincomb a, const lincomb& b) { return a -= b; }
    friend lincomb operator-(const lincomb& a)
    {
        lincomb r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, Coeff(-c));
        return r;
    }
    friend lincomb operator*(const rational& s, const lincomb& a)
    {
        lincomb r;
        if (is_zero(s)) return r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, Coeff(s * c));
        return r;
    }
    bool operator==(const lincomb& o) const { return terms_ == o.terms_; }

private:
    map_type terms_;
};

// Rank over Q by Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<rational>> m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && is_zero(m[piv][c])) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (is_zero(m[i][c])) continue;
            rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Closest candidate by edit distance, for "did you mean" hints.
inline std::string closest(std::string_view s, const std::vector<std::string>& candidates)
{
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& c : candidates) {
        std::vector<std::size_t> prev(c.size() + 1), cur(c.size() + 1);
        for (std::size_t j = 0; j <= c.size(); ++j) prev[j] = j;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            cur[0] = i;
            for (std::size_t j = 1; j <= c.size(); ++j)
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (s[i - 1] == c[j - 1] ? 0 : 1)});
            std::swap(prev, cur);
        }
        if (prev[c.size()] < best_d) {
            best_d = prev[c.size()];
            best = c;
        }
    }
    return best;
}

}  // namespace grhopf

#endif
