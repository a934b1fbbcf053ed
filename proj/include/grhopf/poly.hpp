// Polynomials and truncated formal power series over Q in graded, paritied variables.
#ifndef GRHOPF_POLY_HPP
#define GRHOPF_POLY_HPP

#include "core.hpp"

#include <cstdlib>
#include <limits>
#include <memory>
#include <optional>

namespace grhopf {

// A coordinate. Only `formal` variables count towards the order bound, so
// polynomial base coordinates can be mixed with truncated formal ones.
struct variable {
    std::string name;
    int degree = 0;
    int parity = 0;
    bool formal = true;

    bool operator==(const variable&) const = default;
};

class poly_ring {
public:
    explicit poly_ring(std::vector<variable> vars) : vars_(std::move(vars))
    {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].parity != 0 && vars_[i].parity != 1)
                throw input_error("variable '" + vars_[i].name + "' has invalid parity");
            if (!index_.emplace(vars_[i].name, i).second)
                throw input_error("duplicate variable '" + vars_[i].name + "'");
        }
    }
    std::size_t size() const { return vars_.size(); }
    const variable& var(std::size_t i) const { return vars_.at(i); }
    const std::vector<variable>& vars() const { return vars_; }
    std::optional<std::size_t> find(std::string_view name) const
    {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(std::string_view name) const
    {
        if (auto i = find(name)) return *i;
        std::vector<std::string> names;
        for (const auto& v : vars_) names.push_back(v.name);
        auto c = closest(name, names);
        throw input_error("unknown variable '" + std::string(name) + "'" +
                          (c.empty() ? std::string{} : " (did you mean '" + c + "'?)"));
    }
    bool operator==(const poly_ring& o) const { return vars_ == o.vars_; }

private:
    std::vector<variable> vars_;
    std::map<std::string, std::size_t> index_;
};

using ring_ptr = std::shared_ptr<const poly_ring>;

inline ring_ptr make_ring(std::vector<variable> vars) { return std::make_shared<const poly_ring>(std::move(vars)); }

inline constexpr unsigned unbounded = std::numeric_limits<unsigned>::max();

// Bounds on the formal order and on the absolute weighted degree sum e_i |deg x_i|.
// Both are ideals of monomials, so truncated products stay associative.
struct truncation {
    unsigned order = unbounded;
    unsigned degree = unbounded;

    bool operator==(const truncation&) const = default;
    static truncation meet(const truncation& a, const truncation& b)
    {
        return {std::min(a.order, b.order), std::min(a.degree, b.degree)};
    }
};

using exponents = std::vector<unsigned>;

class series {
public:
    series() = default;  // the zero series of no particular ring
    series(ring_ptr ring, truncation t) : ring_(std::move(ring)), trunc_(t) {}

    static series constant(ring_ptr ring, truncation t, const rational& c)
    {
        series s(ring, t);
        s.add_term(exponents(s.ring_->size(), 0), c);
        return s;
    }
    static series var(ring_ptr ring, truncation t, std::size_t i)
    {
        series s(ring, t);
        exponents e(s.ring_->size(), 0);
        e.at(i) = 1;
        s.add_term(e, rational(1));
        return s;
    }
    static series var(ring_ptr ring, truncation t, std::string_view name)
    {
        auto i = ring->index_of(name);
        return var(std::move(ring), t, i);
    }

    const ring_ptr& ring() const { return ring_; }
    const truncation& trunc() const { return trunc_; }
    const std::map<exponents, rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    unsigned order_of(const exponents& e) const
    {
        unsigned o = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (ring_->var(i).formal) o += e[i];
        return o;
    }
    unsigned weight_of(const exponents& e) const
    {
        unsigned w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) w += e[i] * static_cast<unsigned>(std::abs(ring_->var(i).degree));
        return w;
    }
    int degree_of(const exponents& e) const
    {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<int>(e[i]) * ring_->var(i).degree;
        return d;
    }
    int parity_of(const exponents& e) const
    {
        int p = 0;
        for (std::size_t i = 0; i < e.size(); ++i) p += static_cast<int>(e[i]) * ring_->var(i).parity;
        return p & 1;
    }
    bool fits(const exponents& e) const
    {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (ring_->var(i).parity && e[i] > 1) return false;
        return order_of(e) <= trunc_.order && weight_of(e) <= trunc_.degree;
    }

    // Adds c * monomial; silently drops monomials beyond the truncation.
    void add_term(const exponents& e, const rational& c)
    {
        if (!ring_) throw input_error("series without a ring");
        if (e.size() != ring_->size()) throw input_error("monomial length does not match the ring");
        if (grhopf::is_zero(c) || !fits(e)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (grhopf::is_zero(it->second)) terms_.erase(it);
    }

    rational coefficient(const exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? rational(0) : it->second;
    }
    rational constant_term() const
    {
        if (!ring_) return 0;
        return coefficient(exponents(ring_->size(), 0));
    }

    series& operator+=(const series& o)
    {
        if (o.ring_ == nullptr) return *this;
        if (ring_ == nullptr) {
            *this = o;
            return *this;
        }
        check_ring(o);
        trunc_ = truncation::meet(trunc_, o.trunc_);
        prune();
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    series& operator-=(const series& o) { return *this += -o; }
    friend series operator+(series a, const series& b) { return a += b; }
    friend series operator-(series a, const series& b) { return a -= b; }
    friend series operator-(series a)
    {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend series operator*(const rational& s, series a)
    {
        if (grhopf::is_zero(s)) {
            a.terms_.clear();
            return a;
        }
        for (auto& [e, c] : a.terms_) c *= s;
        return a;
    }

    // Koszul-signed commutative product.
    friend series operator*(const series& a, const series& b)
    {
        if (!a.ring_ || !b.ring_) return a.ring_ ? series(a.ring_, a.trunc_) : series(b.ring_, b.trunc_);
        a.check_ring(b);
        series out(a.ring_, truncation::meet(a.trunc_, b.trunc_));
        const auto& R = *a.ring_;
        exponents e(R.size());
        for (const auto& [ea, ca] : a.terms_) {
            unsigned oa = a.order_of(ea);
            for (const auto& [eb, cb] : b.terms_) {
                if (oa + a.order_of(eb) > out.trunc_.order) continue;
                bool zero = false;
                int odd_after = 0, sign = 1;
                // sign of moving b's odd factors past a's later odd factors
                for (std::size_t i = R.size(); i-- > 0;) {
                    if (R.var(i).parity) {
                        if (ea[i] && eb[i]) {
                            zero = true;
                            break;
                        }
                        if (eb[i] && (odd_after & 1)) sign = -sign;
                        odd_after += static_cast<int>(ea[i]);
                    }
                    e[i] = ea[i] + eb[i];
                }
                if (zero) continue;
                out.add_term(e, sign > 0 ? rational(ca * cb) : rational(-ca * cb));
            }
        }
        return out;
    }
    series& operator*=(const series& o) { return *this = *this * o; }

    bool operator==(const series& o) const
    {
        if (terms_.empty() || o.terms_.empty()) return terms_.empty() && o.terms_.empty();
        return same_ring(o) && terms_ == o.terms_;
    }

    // Re-truncate to tighter bounds.
    series truncated(truncation t) const
    {
        series s = *this;
        s.trunc_ = truncation::meet(trunc_, t);
        s.prune();
        return s;
    }
    series with_trunc(truncation t) const
    {
        if (!ring_) return {};
        series s(ring_, t);
        for (const auto& [e, c] : terms_) s.add_term(e, c);
        return s;
    }

    // Left derivative; odd variables pass the odd factors in front of them.
    series derivative(std::size_t i) const
    {
        if (!ring_) return {};
        truncation t = trunc_;
        if (ring_->var(i).formal && t.order != unbounded && t.order > 0) --t.order;
        series s(ring_, t);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            int before = 0;
            for (std::size_t j = 0; j < i; ++j)
                if (ring_->var(j).parity) before += static_cast<int>(e[j]);
            exponents f = e;
            --f[i];
            rational k = c * e[i];
            if (ring_->var(i).parity && (before & 1)) k = -k;
            s.add_term(f, k);
        }
        return s;
    }

    // Negates odd monomials when p is odd (moving the series past something of parity p).
    series twisted(int p) const
    {
        if ((p & 1) == 0) return *this;
        series s = *this;
        for (auto& [e, c] : s.terms_)
            if (parity_of(e)) c = -c;
        return s;
    }

    series parity_part(int p) const
    {
        series s = *this;
        for (auto it = s.terms_.begin(); it != s.terms_.end();)
            it = parity_of(it->first) == (p & 1) ? std::next(it) : s.terms_.erase(it);
        return s;
    }

    // Replace variable i by images[i] (series over a common target ring).
    series substitute(const std::vector<series>& images, const ring_ptr& target, truncation t) const
    {
        series out(target, t);
        if (!ring_) return out;
        if (images.size() != ring_->size()) throw input_error("substitute: wrong number of images");
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (!images[i].ring_) continue;
            if (!(*images[i].ring_ == *target)) throw input_error("substitute: image over a different ring");
            if (trunc_.order != unbounded && ring_->var(i).formal && !grhopf::is_zero(images[i].constant_term()))
                throw input_error("substitute: formal variable mapped to a series with a constant term");
        }
        std::vector<std::vector<series>> powers(images.size());
        auto power = [&](std::size_t i, unsigned k) -> const series& {
            auto& p = powers[i];
            if (p.empty()) p.push_back(series::constant(target, t, rational(1)));
            while (p.size() <= k) p.push_back(p.back() * images[i]);
            return p[k];
        };
        for (const auto& [e, c] : terms_) {
            series term = series::constant(target, t, c);
            for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
                if (e[i]) term = term * power(i, e[i]);
            out += term;
        }
        return out;
    }

    // Embed into a bigger ring; index_map[i] = position of variable i in target.
    series embed(const ring_ptr& target, const std::vector<std::size_t>& index_map, truncation t) const
    {
        series out(target, t);
        if (!ring_) return out;
        for (const auto& [e, c] : terms_) {
            exponents f(target->size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) f.at(index_map.at(i)) = e[i];
            // reorder sign for odd variables whose relative order changes
            int sign = 1;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t j = i + 1; j < e.size(); ++j)
                    if (e[i] && e[j] && ring_->var(i).parity && ring_->var(j).parity && index_map[i] > index_map[j])
                        sign = -sign;
            out.add_term(f, sign > 0 ? c : rational(-c));
        }
        return out;
    }

    std::string to_string() const;

private:
    void check_ring(const series& o) const
    {
        if (!same_ring(o)) throw input_error("series over different rings");
    }
    bool same_ring(const series& o) const
    {
        return ring_ == o.ring_ || (ring_ && o.ring_ && *ring_ == *o.ring_);
    }
    void prune()
    {
        for (auto it = terms_.begin(); it != terms_.end();) it = fits(it->first) ? std::next(it) : terms_.erase(it);
    }

    ring_ptr ring_;
    truncation trunc_;
    std::map<exponents, rational> terms_;
};

inline bool is_zero(const series& s) { return s.is_zero(); }
inline series koszul_twist(const series& a, int p) { return a.twisted(p); }

namespace detail {
inline void append_term(std::string& out, const rational& c, const std::string& mono)
{
    rational a = abs(c);
    if (out.empty()) {
        if (sgn(c) < 0) out += "-";
    } else {
        out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mono.empty())
        out += to_string(a);
    else if (a == 1)
        out += mono;
    else
        out += to_string(a) + "*" + mono;
}
}  // namespace detail

// Highest total degree first, then descending exponent vectors.
inline std::string series::to_string() const
{
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const exponents, rational>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [&](auto* a, auto* b) {
        unsigned ta = 0, tb = 0;
        for (auto x : a->first) ta += x;
        for (auto x : b->first) tb += x;
        if (ta != tb) return ta > tb;
        return a->first > b->first;
    });
    std::string out;
    for (auto* t : order) {
        std::string mono;
        for (std::size_t i = 0; i < t->first.size(); ++i) {
            if (!t->first[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->var(i).name;
            if (t->first[i] > 1) mono += "^" + std::to_string(t->first[i]);
        }
        detail::append_term(out, t->second, mono);
    }
    return out;
}

// Ideal side of the filtration: a monomial lies in F^p when the product of its
// negative-degree factors has degree <= -p (it is then divisible by an element
// of degree <= -p). For p = 0 the empty product qualifies, so F^0 is everything.
inline bool in_filtration_ideal(const series& s, const exponents& e, unsigned p)
{
    long neg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        int d = s.ring()->var(i).degree;
        if (d < 0) neg += static_cast<long>(e[i]) * d;
    }
    return neg <= -static_cast<long>(p);
}

inline bool filtration_member(const series& s, unsigned p)
{
    for (const auto& [e, c] : s)
        if (!in_filtration_ideal(s, e, p)) return false;
    return true;
}

// Representative in Sym/F^p: drop every monomial of F^p.
inline series truncate(const series& s, unsigned p)
{
    if (!s.ring()) return s;
    series out(s.ring(), s.trunc());
    for (const auto& [e, c] : s)
        if (!in_filtration_ideal(s, e, p)) out.add_term(e, c);
    return out;
}

}  // namespace grhopf

#endif
