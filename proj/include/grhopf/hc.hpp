// Harish-Chandra pairs: A = Hom_{U(h)}(U(g), F(H)) with H the truncated formal
// group of an even subalgebra h. Functionals are stored by their values on
// psi(Sym(m)); everything else is derived from left-invariant vector fields.
#ifndef GRHOPF_HC_HPP
#define GRHOPF_HC_HPP

#include "bch.hpp"
#include "expr.hpp"
#include "verify.hpp"

#include <mutex>
#include <numeric>
#include <random>

namespace grhopf {

// U(g) with series coefficients written on the right of the monomials.
using u_series = lincomb<word, series, struct u_series_tag>;

inline u_series lift(const u_element& a, const ring_ptr& ring, truncation t)
{
    u_series out;
    for (const auto& [w, c] : a) out.add(w, series::constant(ring, t, c));
    return out;
}

// (x_a c)(x_b d) = (-1)^{p(c) p(x_b)} x_a x_b c d
inline u_series mul(const enveloping_algebra& U, const u_series& a, const u_series& b)
{
    u_series out;
    for (const auto& [wa, ca] : a)
        for (const auto& [wb, cb] : b) {
            series coeff = ca.twisted(U.parity(wb)) * cb;
            if (coeff.is_zero()) continue;
            word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            for (const auto& [v, c] : U.normalize(w)) out.add(v, c * coeff);
        }
    return out;
}

// exp(ad p)(x), stopping once the terms vanish under the truncation.
inline lie_vec<series> group_adjoint(const lie_algebra& g, const lie_vec<series>& p, const lie_vec<series>& x,
                                     unsigned max_terms)
{
    lie_vec<series> out = x, term = x;
    for (unsigned k = 1; k <= max_terms && !term.empty(); ++k) {
        term = (rational(1) / k) * bracket(g, p, term);
        out += term;
    }
    return out;
}

// A k-slot table: keys are tuples of admissible U(g)-monomials of total length
// <= order; the entry for total length l is a series truncated at order - l.
struct hc_table {
    std::size_t slots = 1;
    unsigned order = 0;
    ring_ptr ring;
    std::map<std::vector<word>, series> entries;

    series at(const std::vector<word>& key) const
    {
        auto it = entries.find(key);
        return it == entries.end() ? series(ring, {order, unbounded}) : it->second;
    }
    void set(const std::vector<word>& key, series v)
    {
        if (v.is_zero())
            entries.erase(key);
        else
            entries[key] = std::move(v);
    }
    bool operator==(const hc_table& o) const
    {
        return slots == o.slots && order == o.order && entries == o.entries;
    }
    friend hc_table operator+(const hc_table& a, const hc_table& b)
    {
        hc_table r = a;
        for (const auto& [k, v] : b.entries) r.set(k, r.at(k) + v);
        return r;
    }
    friend hc_table operator-(const hc_table& a, const hc_table& b)
    {
        hc_table r = a;
        for (const auto& [k, v] : b.entries) r.set(k, r.at(k) - v);
        return r;
    }
};

inline std::size_t total_length(const std::vector<word>& key)
{
    std::size_t n = 0;
    for (const auto& w : key) n += w.size();
    return n;
}

// Tuples of monomials with total length <= order.
inline std::vector<std::vector<word>> table_keys(const std::vector<word>& monomials, std::size_t slots,
                                                 std::size_t order)
{
    std::vector<std::vector<word>> out;
    std::vector<word> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t left) {
        if (cur.size() == slots) {
            out.push_back(cur);
            return;
        }
        for (const auto& w : monomials) {
            if (w.size() > left) continue;
            cur.push_back(w);
            rec(left - w.size());
            cur.pop_back();
        }
    };
    rec(order);
    return out;
}

// Values on psi(s) for admissible monomials s of Sym(m), truncated at order - |s|.
struct hc_functional {
    unsigned order = 0;
    ring_ptr ring;
    std::map<word, series> values;

    series at(const word& s) const
    {
        auto it = values.find(s);
        return it == values.end() ? series(ring, {order, unbounded}) : it->second;
    }
    void set(const word& s, series v)
    {
        if (v.is_zero())
            values.erase(s);
        else
            values[s] = std::move(v);
    }
    bool operator==(const hc_functional& o) const { return order == o.order && values == o.values; }
    friend hc_functional operator-(const hc_functional& a, const hc_functional& b)
    {
        hc_functional r = a;
        for (const auto& [k, v] : b.values) r.set(k, r.at(k) - v);
        return r;
    }
};

inline hc_functional operator*(const rational& c, const hc_functional& f)
{
    hc_functional r{f.order, f.ring, {}};
    for (const auto& [s, v] : f.values) r.set(s, c * v);
    return r;
}

struct equivariance_defect {
    std::vector<word> key;
    std::size_t slot = 0;
    std::size_t generator = 0;
    series residual;
};

class hc_pair {
public:
    // Optional base variables (polynomial, even) come first in every ring; they are
    // untouched by the group coordinates.
    hc_pair(const lie_algebra& g, std::vector<std::string> h_labels, unsigned order, std::vector<variable> base = {})
        : order_(order), base_(std::move(base))
    {
        if (order < 1) throw input_error("truncation order must be at least 1");
        for (const auto& v : base_)
            if (v.formal || v.parity) throw input_error("base variable '" + v.name + "' must be an even polynomial variable");
        nb_ = base_.size();
        base_ring_ = make_ring(base_);
        std::sort(h_labels.begin(), h_labels.end());
        h_labels.erase(std::unique(h_labels.begin(), h_labels.end()), h_labels.end());
        for (const auto& l : h_labels) {
            auto i = g.index_of(l);
            if (g.parity(i))
                throw input_error("h contains the odd generator '" + l +
                                  "'; pass to the even part of h with the super subalgebra reduction");
        }
        g_ = g.with_order(basis_order{h_labels});
        nh_ = h_labels.size();
        for (std::size_t i = 0; i < nh_; ++i) h_.push_back(i);
        if (!is_closed(g_, h_)) throw input_error("h is not a subalgebra of " + g.name());
        std::vector<std::string> ordered;
        for (std::size_t i = 0; i < nh_; ++i) ordered.push_back(g_.element(i).label);
        hsub_ = subalgebra(g_, ordered, g.name() + "_h", basis_order{ordered});
        for (std::size_t i = 0; i < nh_; ++i)
            if (hsub_.element(i).label != ordered[i]) throw input_error("internal: subalgebra order mismatch");
        auto jac = check_jacobi(hsub_);
        if (!jac.pass()) throw input_error("h fails the Jacobi identity");
        U_ = std::make_shared<enveloping_algebra>(g_);
        law_ = formal_group_coproduct(hsub_, order);
        for (std::size_t k = 1; k <= 3; ++k) {
            std::vector<variable> vars = base_;
            for (std::size_t s = 0; s < k; ++s)
                for (std::size_t j = 0; j < nh_; ++j)
                    vars.push_back({(k == 1 ? std::string("w") : "w" + std::to_string(s + 1)) + "_" +
                                        g_.element(j).label,
                                    -g_.degree(j), 0, true});
            rings_.push_back(make_ring(vars));
        }
        build_fields();
        build_inverse();
        for (const auto& w : U_->admissible_monomials(order)) {
            monomials_.push_back(w);
            if (std::all_of(w.begin(), w.end(), [&](int x) { return x >= static_cast<int>(nh_); }))
                m_monomials_.push_back(w);
        }
    }

    const lie_algebra& g() const { return g_; }
    const lie_algebra& h() const { return hsub_; }
    const enveloping_algebra& U() const { return *U_; }
    std::size_t nh() const { return nh_; }
    const std::vector<std::size_t>& h_indices() const { return h_; }
    unsigned order() const { return order_; }
    const formal_group_law& law() const { return law_; }
    truncation trunc(unsigned order) const { return {order, unbounded}; }
    const ring_ptr& ring(std::size_t slots) const
    {
        if (slots < 1 || slots > rings_.size()) throw input_error("tables have 1 to 3 slots");
        return rings_[slots - 1];
    }
    const std::vector<word>& monomials() const { return monomials_; }
    const std::vector<word>& m_monomials() const { return m_monomials_; }
    std::vector<word> monomials(unsigned max_len) const
    {
        std::vector<word> out;
        for (const auto& w : monomials_)
            if (w.size() <= max_len) out.push_back(w);
        return out;
    }
    std::vector<word> m_monomials(unsigned max_len) const
    {
        std::vector<word> out;
        for (const auto& w : m_monomials_)
            if (w.size() <= max_len) out.push_back(w);
        return out;
    }

    // Keys of a k-slot table of the given order.
    std::vector<std::vector<word>> keys(std::size_t slots, unsigned order) const
    {
        return table_keys(monomials_, slots, order);
    }

    // Coordinates of one slot inside the k-slot ring.
    std::vector<series> coords(std::size_t slots, std::size_t slot, unsigned order) const
    {
        std::vector<series> out;
        for (std::size_t j = 0; j < nh_; ++j) out.push_back(series::var(ring(slots), trunc(order), nb_ + slot * nh_ + j));
        return out;
    }
    std::vector<series> zero_point(std::size_t slots, unsigned order) const
    {
        return std::vector<series>(nh_, series(ring(slots), trunc(order)));
    }

    // Z(P, Q)
    std::vector<series> multiply(const std::vector<series>& P, const std::vector<series>& Q, const ring_ptr& R,
                                 truncation t) const
    {
        std::vector<series> images = P;
        images.insert(images.end(), Q.begin(), Q.end());
        std::vector<series> out;
        for (const auto& c : law_.component) out.push_back(c.substitute(images, R, t));
        return out;
    }
    std::vector<series> invert(const std::vector<series>& P, const ring_ptr& R, truncation t) const
    {
        std::vector<series> images = base_vars(R, {unbounded, unbounded});
        images.insert(images.end(), P.begin(), P.end());
        std::vector<series> out;
        for (const auto& c : inverse_) out.push_back(c.substitute(images, R, t));
        return out;
    }
    // The group inverse as series in w.
    const std::vector<series>& inverse() const { return inverse_; }

    // Ad_P(x) for every generator x of g, P a point of H.
    std::vector<lie_vec<series>> adjoint(const std::vector<series>& P, const ring_ptr& R, truncation t) const
    {
        lie_vec<series> p;
        for (std::size_t j = 0; j < nh_; ++j) p.add(j, P[j]);
        std::vector<lie_vec<series>> out;
        for (std::size_t x = 0; x < g_.dim(); ++x) {
            lie_vec<series> v(x, series::constant(R, t, rational(1)));
            out.push_back(group_adjoint(g_, p, v, t.order));
        }
        return out;
    }
    // Ad_P applied to an element of U(g), multiplicatively.
    u_series adjoint(const std::vector<lie_vec<series>>& ad, const u_element& a, const ring_ptr& R, truncation t) const
    {
        u_series out;
        for (const auto& [w, c] : a) {
            u_series term = lift(U_->one(), R, t);
            for (int x : w) {
                u_series gx;
                for (const auto& [k, s] : ad[static_cast<std::size_t>(x)]) gx.add(word{static_cast<int>(k)}, s);
                term = mul(*U_, term, gx);
            }
            out.add(term, c);
        }
        return out;
    }

    // Left-invariant field of h-generator z acting on the coordinates of one slot.
    series left_field(std::size_t z, const series& f, std::size_t slots, std::size_t slot) const
    {
        const auto& A = slot_fields(slots, slot);
        series out(f.ring(), f.trunc());
        for (std::size_t j = 0; j < nh_; ++j) {
            series d = f.derivative(nb_ + slot * nh_ + j);
            if (d.is_zero()) continue;
            out += A[z][j] * d;
        }
        const unsigned t = f.trunc().order;
        return out.with_trunc({t == 0 ? 0 : t - 1, unbounded});
    }
    const std::vector<std::vector<series>>& fields() const { return fields_[0]; }

    const hc_split& factorize(const word& a) const
    {
        std::lock_guard lock(mutex_);
        auto it = split_cache_.find(a);
        if (it != split_cache_.end()) return it->second;
        return split_cache_.emplace(a, hc_factorize(*U_, u_element(a, rational(1)), h_)).first->second;
    }

    // ---- functionals ------------------------------------------------------

    hc_functional make(std::map<word, series> values, unsigned order) const
    {
        hc_functional f{order, ring(1), {}};
        for (auto& [s, v] : values) {
            if (s.size() > order) throw input_error("functional value beyond the truncation order");
            if (!U_->is_admissible(s) ||
                std::any_of(s.begin(), s.end(), [&](int x) { return x < static_cast<int>(nh_); }))
                throw input_error("functionals are given on admissible monomials of the complement");
            f.set(s, v.with_trunc(trunc(order - static_cast<unsigned>(s.size()))));
        }
        return f;
    }
    hc_functional unit(unsigned order) const
    {
        return make({{word{}, series::constant(ring(1), trunc(order), rational(1))}}, order);
    }
    hc_functional unit() const { return unit(order_); }
    hc_functional scalar(const rational& c) const { return rational(c) * unit(); }

    // w^b delta_s for |b| + |s| <= order.
    std::vector<std::pair<std::string, hc_functional>> basis(unsigned order) const
    {
        std::vector<std::pair<std::string, hc_functional>> out;
        for (const auto& s : m_monomials(order)) {
            const unsigned rest = order - static_cast<unsigned>(s.size());
            series one = series::constant(ring(1), trunc(rest), rational(1));
            std::vector<series> monos{one};
            std::vector<series> layer{one};
            for (unsigned d = 1; d <= rest; ++d) {
                std::map<exponents, bool> seen;
                std::vector<series> next;
                for (const auto& m : layer)
                    for (std::size_t j = 0; j < nh_; ++j) {
                        series v = m * series::var(ring(1), trunc(rest), nb_ + j);
                        if (v.is_zero() || seen.count(v.terms().begin()->first)) continue;
                        seen[v.terms().begin()->first] = true;
                        next.push_back(v);
                    }
                monos.insert(monos.end(), next.begin(), next.end());
                layer = std::move(next);
            }
            for (const auto& m : monos) {
                std::string name = (m.to_string() == "1" ? std::string{} : m.to_string() + "*") + "d[" +
                                   word_to_string(g_, s) + "]";
                out.emplace_back(name, make({{s, m}}, order));
            }
        }
        return out;
    }

    // All values phi(w, a) for admissible a, from the equivariance rule.
    hc_table table(const hc_functional& f) const
    {
        hc_table T{1, f.order, ring(1), {}};
        for (const auto& a : monomials(f.order)) {
            const unsigned t = f.order - static_cast<unsigned>(a.size());
            series v(ring(1), trunc(t));
            for (const auto& [p, c] : factorize(a)) {
                auto it = f.values.find(p.second);
                if (it == f.values.end()) continue;
                series s = it->second;
                for (auto z = p.first.rbegin(); z != p.first.rend() && !s.is_zero(); ++z)
                    s = left_field(static_cast<std::size_t>(*z), s, 1, 0);
                v += c * s;
            }
            T.set({a}, v.with_trunc(trunc(t)));
        }
        return T;
    }

    // Reads a 1-slot table at psi(s).
    hc_functional restrict(const hc_table& T) const
    {
        if (T.slots != 1) throw input_error("restrict expects a one-slot table");
        hc_functional f{T.order, ring(1), {}};
        for (const auto& s : m_monomials(T.order)) {
            series v(ring(1), trunc(T.order - static_cast<unsigned>(s.size())));
            for (const auto& [a, c] : U_->psi_monomial(s)) v += c * T.at({a});
            f.set(s, v.with_trunc(trunc(T.order - static_cast<unsigned>(s.size()))));
        }
        return f;
    }

    hc_functional truncated(const hc_functional& f, unsigned order) const
    {
        if (order > f.order) throw input_error("cannot raise the truncation order");
        std::map<word, series> vals;
        for (const auto& [s, v] : f.values)
            if (s.size() <= order) vals.emplace(s, v);
        return make(vals, order);
    }

    rational counit(const hc_functional& f) const { return f.at(word{}).constant_term(); }
    // phi(1) at the identity, as a polynomial in the base variables.
    series counit_value(const hc_functional& f) const { return at_identity(f.at(word{})); }
    series at_identity(const series& s) const
    {
        std::vector<series> images = base_vars(base_ring_, {unbounded, unbounded});
        images.resize(s.ring()->size(), series(base_ring_, {unbounded, unbounded}));
        return s.substitute(images, base_ring_, {unbounded, unbounded});
    }
    // A base polynomial as a constant along the group, in the k-slot ring.
    series from_base(const series& f, std::size_t slots, unsigned order) const
    {
        std::vector<std::size_t> idx(nb_);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        return f.embed(ring(slots), idx, trunc(order));
    }
    std::vector<series> base_vars(const ring_ptr& R, truncation t) const
    {
        std::vector<series> out;
        for (std::size_t i = 0; i < nb_; ++i) out.push_back(series::var(R, t, i));
        return out;
    }
    std::size_t nb() const { return nb_; }
    const ring_ptr& base_ring() const { return base_ring_; }

    int parity(const hc_functional& f) const
    {
        int p = -1;
        for (const auto& [s, v] : f.values) {
            int q = U_->parity(s);
            if (p >= 0 && p != q) throw input_error("functional is not homogeneous");
            p = q;
        }
        return p < 0 ? 0 : p;
    }

    // (f1 f2)(psi s) through the coproduct of Sym(m).
    hc_functional product(const hc_functional& f1, const hc_functional& f2) const
    {
        const unsigned N = std::min(f1.order, f2.order);
        hc_functional out{N, ring(1), {}};
        for (const auto& s : m_monomials(N)) {
            const truncation t = trunc(N - static_cast<unsigned>(s.size()));
            series v(ring(1), t);
            for (const auto& [p, c] : U_->sym_coproduct(sym_element(s, rational(1)))) {
                auto a = f1.values.find(p.first);
                auto b = f2.values.find(p.second);
                if (a == f1.values.end() || b == f2.values.end()) continue;
                int sign = (U_->parity(p.first) & U_->parity(p.second)) ? -1 : 1;
                v += rational(c * sign) * (a->second * b->second);
            }
            out.set(s, v.with_trunc(t));
        }
        return out;
    }

    // mu (T1 (x) T2) Delta on full tables; an independent route to the product.
    hc_table product_table(const hc_table& A, const hc_table& B) const
    {
        const unsigned N = std::min(A.order, B.order);
        hc_table T{1, N, ring(1), {}};
        for (const auto& a : monomials(N)) {
            const truncation t = trunc(N - static_cast<unsigned>(a.size()));
            series v(ring(1), t);
            for (const auto& [p, c] : U_->coproduct(u_element(a, rational(1)))) {
                int sign = (U_->parity(p.first) & U_->parity(p.second)) ? -1 : 1;
                v += rational(c * sign) * (A.at({p.first}) * B.at({p.second}));
            }
            T.set({a}, v.with_trunc(t));
        }
        return T;
    }

    // ---- generic evaluation of tables at points of H -------------------------

    // A table pulled back along points (one per slot) into a target ring.
    class pulled {
    public:
        pulled(const hc_table& T, std::vector<series> images, ring_ptr target)
            : T_(&T), images_(std::move(images)), target_(std::move(target))
        {
        }
        const series& get(const std::vector<word>& key) const
        {
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
            auto e = T_->entries.find(key);
            truncation t{T_->order - static_cast<unsigned>(total_length(key)), unbounded};
            series v = e == T_->entries.end() ? series(target_, t) : e->second.substitute(images_, target_, t);
            return cache_.emplace(key, std::move(v)).first->second;
        }
        const ring_ptr& target() const { return target_; }

    private:
        const hc_table* T_;
        std::vector<series> images_;
        ring_ptr target_;
        mutable std::map<std::vector<word>, series> cache_;
    };

    pulled pull(const hc_table& T, const std::vector<std::vector<series>>& points, const ring_ptr& target) const
    {
        if (points.size() != T.slots) throw input_error("pull: one point per slot expected");
        std::vector<series> images = base_vars(target, {unbounded, unbounded});
        for (const auto& p : points) images.insert(images.end(), p.begin(), p.end());
        return pulled(T, std::move(images), target);
    }

    // T(P_1, A_1, ..., P_k, A_k) with U(g)-arguments carrying series coefficients.
    series evaluate(const pulled& P, const std::vector<u_series>& args, truncation t) const
    {
        series out(P.target(), t);
        std::vector<word> key(args.size());
        std::function<void(std::size_t, const series&)> rec = [&](std::size_t i, const series& coeff) {
            if (i == args.size()) {
                if (total_length(key) > order_) return;
                const series& v = P.get(key);
                if (!v.is_zero()) out += v * coeff;
                return;
            }
            for (const auto& [w, c] : args[i]) {
                key[i] = w;
                rec(i + 1, coeff * c);
            }
        };
        rec(0, series::constant(P.target(), t, rational(1)));
        return out.with_trunc(t);
    }

    // ---- Hopf structure -------------------------------------------------------

    // Delta(phi)(w1, a1, w2, a2) = phi(w1 w2, Ad_{w2}^{-1}(a1) a2)
    hc_table coproduct(const hc_functional& f) const { return coproduct_table(table(f)); }

    hc_table coproduct_table(const hc_table& T1) const
    {
        const unsigned N = T1.order;
        const auto& R = ring(2);
        const auto t = trunc(N);
        auto w1 = coords(2, 0, N), w2 = coords(2, 1, N);
        auto P = pull(T1, {multiply(w1, w2, R, t)}, R);
        auto adinv = adjoint(invert(w2, R, t), R, t);
        hc_table out{2, N, R, {}};
        for (const auto& key : keys(2, N)) {
            const truncation tk = trunc(N - static_cast<unsigned>(total_length(key)));
            u_series arg = mul(*U_, adjoint(adinv, u_element(key[0], rational(1)), R, t),
                               lift(u_element(key[1], rational(1)), R, t));
            out.set(key, evaluate(P, {arg}, tk));
        }
        return out;
    }

    // S(phi)(w, a) = phi(w^{-1}, Ad_w(S a))
    hc_functional antipode(const hc_functional& f) const { return restrict(antipode_table(table(f))); }

    hc_table antipode_table(const hc_table& T1) const
    {
        const unsigned N = T1.order;
        const auto& R = ring(1);
        const auto t = trunc(N);
        auto w = coords(1, 0, N);
        auto P = pull(T1, {invert(w, R, t)}, R);
        auto ad = adjoint(w, R, t);
        hc_table out{1, N, R, {}};
        for (const auto& a : monomials(N)) {
            u_series arg = adjoint(ad, U_->antipode(u_element(a, rational(1))), R, t);
            out.set({a}, evaluate(P, {arg}, trunc(N - static_cast<unsigned>(a.size()))));
        }
        return out;
    }

    // Literal variant without the U(g) antipode, kept for comparison in tests.
    hc_table antipode_table_without_s(const hc_table& T1) const
    {
        const unsigned N = T1.order;
        const auto& R = ring(1);
        const auto t = trunc(N);
        auto w = coords(1, 0, N);
        auto P = pull(T1, {invert(w, R, t)}, R);
        auto ad = adjoint(w, R, t);
        hc_table out{1, N, R, {}};
        for (const auto& a : monomials(N)) {
            u_series arg = adjoint(ad, u_element(a, rational(1)), R, t);
            out.set({a}, evaluate(P, {arg}, trunc(N - static_cast<unsigned>(a.size()))));
        }
        return out;
    }

    // (phi (x) psi)(a1, a2) = (-1)^{p(a1) p(a2)} phi(w1, a1) psi(w2, a2)
    hc_table tensor(const hc_functional& f1, const hc_functional& f2) const
    {
        const unsigned N = std::min(f1.order, f2.order);
        const auto& R = ring(2);
        auto T1 = table(f1), T2 = table(f2);
        auto P1 = pull(T1, {coords(2, 0, N)}, R);
        auto P2 = pull(T2, {coords(2, 1, N)}, R);
        hc_table out{2, N, R, {}};
        for (const auto& key : keys(2, N)) {
            int sign = (U_->parity(key[0]) & U_->parity(key[1])) ? -1 : 1;
            series v = P1.get({key[0]}) * P2.get({key[1]});
            out.set(key, (rational(sign) * v).with_trunc(trunc(N - static_cast<unsigned>(total_length(key)))));
        }
        return out;
    }

    hc_table one2() const
    {
        hc_table out{2, order_, ring(2), {}};
        out.set({word{}, word{}}, series::constant(ring(2), trunc(order_), rational(1)));
        return out;
    }

    // Slot-wise product of two-slot tables through the coproduct of U(g) (x) U(g).
    hc_table mul2(const hc_table& A, const hc_table& B) const
    {
        const unsigned N = std::min(A.order, B.order);
        hc_table out{2, N, ring(2), {}};
        for (const auto& key : keys(2, N)) {
            const truncation t = trunc(N - static_cast<unsigned>(total_length(key)));
            series v(ring(2), t);
            auto d1 = U_->coproduct(u_element(key[0], rational(1)));
            auto d2 = U_->coproduct(u_element(key[1], rational(1)));
            for (const auto& [p1, c1] : d1)
                for (const auto& [p2, c2] : d2) {
                    int q1 = U_->parity(p1.first), q1b = U_->parity(p1.second);
                    int q2 = U_->parity(p2.first), q2b = U_->parity(p2.second);
                    int e = (q1b & q2) + ((q1b + q2b) & 1) * ((q1 + q2) & 1);
                    rational c = c1 * c2 * ((e & 1) ? -1 : 1);
                    v += c * (A.at({p1.first, p2.first}) * B.at({p1.second, p2.second}));
                }
            out.set(key, v.with_trunc(t));
        }
        return out;
    }

    // (Delta (x) id) and (id (x) Delta) on two-slot tables.
    hc_table delta_id(const hc_table& T) const { return coproduct_slot(T, 0); }
    hc_table id_delta(const hc_table& T) const { return coproduct_slot(T, 1); }

    // (id (x) eps) and (eps (x) id): one slot evaluated at the identity on 1.
    hc_functional id_counit(const hc_table& T) const { return restrict(counit_slot(T, 1)); }
    hc_functional counit_id(const hc_table& T) const { return restrict(counit_slot(T, 0)); }

    hc_table counit_slot(const hc_table& T, std::size_t slot) const
    {
        if (T.slots != 2) throw input_error("counit_slot expects a two-slot table");
        const unsigned N = T.order;
        const auto& R = ring(1);
        std::vector<std::vector<series>> pts(2);
        pts[slot] = zero_point(1, N);
        pts[1 - slot] = coords(1, 0, N);
        auto P = pull(T, pts, R);
        hc_table out{1, N, R, {}};
        for (const auto& a : monomials(N)) {
            std::vector<word> key(2);
            key[1 - slot] = a;
            out.set({a}, P.get(key).with_trunc(trunc(N - static_cast<unsigned>(a.size()))));
        }
        return out;
    }

    // mu(T)(w, a) = sum T(w, a', w, a'') over Delta(a).
    hc_table mu_table(const hc_table& T) const
    {
        if (T.slots != 2) throw input_error("mu expects a two-slot table");
        const unsigned N = T.order;
        const auto& R = ring(1);
        auto w = coords(1, 0, N);
        auto P = pull(T, {w, w}, R);
        hc_table out{1, N, R, {}};
        for (const auto& a : monomials(N)) {
            const truncation t = trunc(N - static_cast<unsigned>(a.size()));
            series v(R, t);
            for (const auto& [p, c] : U_->coproduct(u_element(a, rational(1)))) v += c * P.get({p.first, p.second});
            out.set({a}, v.with_trunc(t));
        }
        return out;
    }
    hc_functional mu(const hc_table& T) const { return restrict(mu_table(T)); }

    // (S (x) id) and (id (x) S) on two-slot tables.
    hc_table s_id(const hc_table& T) const { return antipode_slot(T, 0); }
    hc_table id_s(const hc_table& T) const { return antipode_slot(T, 1); }

    // (x^l phi)(w, a) = phi(w, a x), (x^r phi)(w, a) = phi(w, Ad_w^{-1}(x) a); order drops by one.
    hc_table left_action_table(const lie_vector& x, const hc_table& T) const
    {
        if (T.order < 1) throw input_error("module actions need order at least 1");
        const unsigned N = T.order - 1;
        hc_table out{1, N, ring(1), {}};
        for (const auto& a : monomials(N)) {
            const truncation t = trunc(N - static_cast<unsigned>(a.size()));
            series v(ring(1), t);
            for (const auto& [w, c] : U_->mul(u_element(a, rational(1)), U_->from_lie(x))) v += c * T.at({w});
            out.set({a}, v.with_trunc(t));
        }
        return out;
    }
    hc_table right_action_table(const lie_vector& x, const hc_table& T) const
    {
        if (T.order < 1) throw input_error("module actions need order at least 1");
        const unsigned N = T.order - 1;
        const auto& R = ring(1);
        const auto t0 = trunc(T.order);
        auto P = pull(T, {coords(1, 0, T.order)}, R);
        auto adinv = adjoint(invert(coords(1, 0, T.order), R, t0), R, t0);
        u_series gx = adjoint(adinv, U_->from_lie(x), R, t0);
        hc_table out{1, N, R, {}};
        for (const auto& a : monomials(N)) {
            u_series arg = mul(*U_, gx, lift(u_element(a, rational(1)), R, t0));
            out.set({a}, evaluate(P, {arg}, trunc(N - static_cast<unsigned>(a.size()))));
        }
        return out;
    }
    hc_functional left_action(const lie_vector& x, const hc_functional& f) const
    {
        return restrict(left_action_table(x, table(f)));
    }
    hc_functional right_action(const lie_vector& x, const hc_functional& f) const
    {
        return restrict(right_action_table(x, table(f)));
    }

    // T(..., z a_i, ...) against L^{(i)}_z T(...), for every slot and h-generator.
    std::vector<equivariance_defect> equivariance_defects(const hc_table& T) const
    {
        std::vector<equivariance_defect> out;
        for (const auto& key : keys(T.slots, T.order)) {
            const std::size_t len = total_length(key);
            if (len >= T.order) continue;
            const truncation t = trunc(T.order - static_cast<unsigned>(len) - 1);
            for (std::size_t i = 0; i < T.slots; ++i)
                for (std::size_t z = 0; z < nh_; ++z) {
                    series lhs(T.ring, t);
                    for (const auto& [w, c] : U_->mul(U_->gen(z), u_element(key[i], rational(1)))) {
                        auto k2 = key;
                        k2[i] = w;
                        lhs += c * T.at(k2);
                    }
                    series rhs = left_field(z, T.at(key), T.slots, i);
                    series res = (lhs - rhs).with_trunc(t);
                    if (!res.is_zero()) out.push_back({key, i, z, res});
                }
        }
        return out;
    }

    std::string show(const hc_functional& f) const
    {
        std::string out;
        for (const auto& [s, v] : f.values) {
            if (!out.empty()) out += "; ";
            out += "[" + word_to_string(g_, s) + "] -> " + v.to_string();
        }
        return out.empty() ? "0" : out;
    }
    std::string show(const hc_table& T) const
    {
        std::string out;
        for (const auto& [k, v] : T.entries) {
            if (!out.empty()) out += "; ";
            out += "(";
            for (std::size_t i = 0; i < k.size(); ++i) out += (i ? ", " : "") + word_to_string(g_, k[i]);
            out += ") -> " + v.to_string();
        }
        return out.empty() ? "0" : out;
    }

private:
    hc_table coproduct_slot(const hc_table& T, std::size_t slot) const
    {
        if (T.slots != 2) throw input_error("coproduct on a slot expects a two-slot table");
        const unsigned N = T.order;
        const auto& R = ring(3);
        const auto t = trunc(N);
        auto w1 = coords(3, 0, N), w2 = coords(3, 1, N), w3 = coords(3, 2, N);
        std::vector<std::vector<series>> pts;
        std::vector<lie_vec<series>> adinv;
        if (slot == 0) {
            pts = {multiply(w1, w2, R, t), w3};
            adinv = adjoint(invert(w2, R, t), R, t);
        } else {
            pts = {w1, multiply(w2, w3, R, t)};
            adinv = adjoint(invert(w3, R, t), R, t);
        }
        auto P = pull(T, pts, R);
        hc_table out{3, N, R, {}};
        for (const auto& key : keys(3, N)) {
            const truncation tk = trunc(N - static_cast<unsigned>(total_length(key)));
            std::vector<u_series> args;
            if (slot == 0) {
                args.push_back(mul(*U_, adjoint(adinv, u_element(key[0], rational(1)), R, t),
                                   lift(u_element(key[1], rational(1)), R, t)));
                args.push_back(lift(u_element(key[2], rational(1)), R, t));
            } else {
                args.push_back(lift(u_element(key[0], rational(1)), R, t));
                args.push_back(mul(*U_, adjoint(adinv, u_element(key[1], rational(1)), R, t),
                                   lift(u_element(key[2], rational(1)), R, t)));
            }
            out.set(key, evaluate(P, args, tk));
        }
        return out;
    }

    hc_table antipode_slot(const hc_table& T, std::size_t slot) const
    {
        if (T.slots != 2) throw input_error("antipode on a slot expects a two-slot table");
        const unsigned N = T.order;
        const auto& R = ring(2);
        const auto t = trunc(N);
        auto ws = coords(2, slot, N);
        std::vector<std::vector<series>> pts{coords(2, 0, N), coords(2, 1, N)};
        pts[slot] = invert(ws, R, t);
        auto P = pull(T, pts, R);
        auto ad = adjoint(ws, R, t);
        hc_table out{2, N, R, {}};
        for (const auto& key : keys(2, N)) {
            std::vector<u_series> args(2);
            args[slot] = adjoint(ad, U_->antipode(u_element(key[slot], rational(1))), R, t);
            args[1 - slot] = lift(u_element(key[1 - slot], rational(1)), R, t);
            out.set(key, evaluate(P, args, trunc(N - static_cast<unsigned>(total_length(key)))));
        }
        return out;
    }

    void build_fields()
    {
        // A^j_z(w) = d/dv^z Z^j(w, v) at v = 0
        const auto& R = ring(1);
        const auto t = trunc(order_);
        std::vector<series> images;
        for (std::size_t j = 0; j < nh_; ++j) images.push_back(series::var(R, t, nb_ + j));
        for (std::size_t j = 0; j < nh_; ++j) images.push_back(series(R, t));
        std::vector<std::vector<series>> A(nh_);
        for (std::size_t z = 0; z < nh_; ++z)
            for (std::size_t j = 0; j < nh_; ++j)
                A[z].push_back(law_.component[j].derivative(nh_ + z).substitute(images, R, t));
        fields_.push_back(A);
        // the same fields on each slot of the 2- and 3-slot rings
        for (std::size_t k = 2; k <= 3; ++k)
            for (std::size_t s = 0; s < k; ++s) {
                auto w = base_vars(ring(k), t);
                for (auto& c : coords(k, s, order_)) w.push_back(c);
                std::vector<std::vector<series>> B(nh_);
                for (std::size_t z = 0; z < nh_; ++z)
                    for (std::size_t j = 0; j < nh_; ++j) B[z].push_back(A[z][j].substitute(w, ring(k), t));
                fields_.push_back(B);
            }
    }
    const std::vector<std::vector<series>>& slot_fields(std::size_t slots, std::size_t slot) const
    {
        // layout: k=1 slot 0, k=2 slots 0..1, k=3 slots 0..2
        std::size_t base = slots == 1 ? 0 : slots == 2 ? 1 : 3;
        return fields_.at(base + slot);
    }

    void build_inverse()
    {
        // iota <- iota - Z(w, iota), starting from -w; one more order per step
        const auto& R = ring(1);
        const auto t = trunc(order_);
        auto w = coords(1, 0, order_);
        std::vector<series> iota;
        for (const auto& x : w) iota.push_back(-x);
        for (unsigned k = 0; k <= order_; ++k) {
            auto z = multiply(w, iota, R, t);
            for (std::size_t j = 0; j < nh_; ++j) iota[j] -= z[j];
        }
        auto left = multiply(w, iota, R, t), right = multiply(iota, w, R, t);
        for (std::size_t j = 0; j < nh_; ++j)
            if (!left[j].is_zero() || !right[j].is_zero()) throw input_error("group inverse did not converge");
        inverse_ = iota;
    }

    lie_algebra g_, hsub_;
    unsigned order_;
    std::vector<variable> base_;
    std::size_t nb_ = 0;
    ring_ptr base_ring_;
    std::size_t nh_ = 0;
    std::vector<std::size_t> h_;
    std::shared_ptr<enveloping_algebra> U_;
    formal_group_law law_;
    std::vector<ring_ptr> rings_;
    std::vector<std::vector<std::vector<series>>> fields_;
    std::vector<series> inverse_;
    std::vector<word> monomials_, m_monomials_;
    mutable std::mutex mutex_;
    mutable std::map<word, hc_split> split_cache_;
};

using hc_dossier = structure_dossier<hc_functional, hc_table, hc_table, rational>;

// Axiom dossier of A on the functionals w^b delta_s with |b| + |s| <= order.
inline hc_dossier make_hc_dossier(const hc_pair& P)
{
    hc_dossier d;
    d.subject = "Harish-Chandra Hopf algebra of (" + P.g().name() + ", " + P.h().name() + "), order " +
                std::to_string(P.order());
    d.kind = flavor::hopf_algebra;
    for (auto& [name, f] : P.basis(P.order())) {
        d.carrier_names.push_back(name);
        d.carrier.push_back(std::move(f));
    }
    d.base = {rational(1), rational(-3, 2)};
    d.base_names = {"1", "-3/2"};
    const hc_pair* p = &P;
    d.show = [p](const hc_functional& f) { return p->show(f); };
    d.show2 = [p](const hc_table& t) { return p->show(t); };
    d.show3 = d.show2;
    d.show_base = [](const rational& r) { return to_string(r); };
    d.mul = [p](const hc_functional& a, const hc_functional& b) { return p->product(a, b); };
    d.one = [p] { return p->unit(); };
    d.parity = [p](const hc_functional& f) { return p->parity(f); };
    d.base_mul = [](const rational& a, const rational& b) { return rational(a * b); };
    d.delta = [p](const hc_functional& f) { return p->coproduct(f); };
    d.counit = [p](const hc_functional& f) { return p->counit(f); };
    d.delta_id = [p](const hc_table& t) { return p->delta_id(t); };
    d.id_delta = [p](const hc_table& t) { return p->id_delta(t); };
    d.id_counit = [p](const hc_table& t) { return p->id_counit(t); };
    d.counit_id = [p](const hc_table& t) { return p->counit_id(t); };
    d.mul2 = [p](const hc_table& a, const hc_table& b) { return p->mul2(a, b); };
    d.one2 = [p] { return p->one2(); };
    d.tensor = [p](const hc_functional& a, const hc_functional& b) { return p->tensor(a, b); };
    d.eta_l = [p](const rational& c) { return p->scalar(c); };
    d.antipode = [p](const hc_functional& f) { return p->antipode(f); };
    d.mu = [p](const hc_table& t) { return p->mu(t); };
    d.s_id = [p](const hc_table& t) { return p->s_id(t); };
    d.id_s = [p](const hc_table& t) { return p->id_s(t); };
    return d;
}

// ---- super subalgebra reduction ---------------------------------------------
//
// For h = h0 + h1 with h1 odd: Hom_{U(h)}(U(g), Hom_{U(h0)}(U(h), F(H0))) is
// identified with Hom_{U(h0)}(U(g), F(H0)) by  phi(a) = Phi(a)(1)  and
// Phi(a)(b) = phi(b a).
class super_reduction {
public:
    super_reduction(const lie_algebra& g, std::vector<std::string> h_labels, unsigned order)
        : order_(order)
    {
        std::sort(h_labels.begin(), h_labels.end());
        std::vector<std::string> even;
        for (const auto& l : h_labels)
            if (g.parity(g.index_of(l)) == 0) even.push_back(l);
        even_ = std::make_unique<hc_pair>(g, even, order);
        // U(g) with h in front, and U(h) with h0 in front
        gh_ = g.with_order(basis_order{h_labels});
        const std::size_t nh = h_labels.size();
        std::vector<std::string> ordered;
        for (std::size_t i = 0; i < nh; ++i) ordered.push_back(gh_.element(i).label);
        for (std::size_t i = 0; i < nh; ++i)
            if (std::find(h_labels.begin(), h_labels.end(), gh_.element(i).label) == h_labels.end())
                throw input_error("internal: h is not in front");
        if (!is_closed(gh_, indices_of(gh_, ordered))) throw input_error("h is not a subalgebra");
        hh_ = subalgebra(gh_, ordered, g.name() + "_h", basis_order{even});
        Ug_ = std::make_shared<enveloping_algebra>(gh_);
        Uh_ = std::make_shared<enveloping_algebra>(hh_);
        for (std::size_t i = 0; i < nh; ++i) h_in_g_.push_back(i);
        for (std::size_t i = 0; i < even.size(); ++i) h0_in_h_.push_back(i);
        nh_ = nh;
        for (const auto& w : Ug_->admissible_monomials(order))
            if (std::all_of(w.begin(), w.end(), [&](int x) { return x >= static_cast<int>(nh); })) mprime_.push_back(w);
        for (const auto& w : Uh_->admissible_monomials(order))
            if (std::all_of(w.begin(), w.end(), [&](int x) { return x >= static_cast<int>(even.size()); }))
                h1_.push_back(w);
    }

    const hc_pair& even_pair() const { return *even_; }
    const enveloping_algebra& Ug() const { return *Ug_; }
    const enveloping_algebra& Uh() const { return *Uh_; }
    const std::vector<word>& m_prime() const { return mprime_; }
    const std::vector<word>& h1() const { return h1_; }

    // Phi is given on (psi(s'), psi_h(t)): s' in Sym of the complement of h,
    // t in Sym(h1); values over the ring of H0, truncated at order - |s'| - |t|.
    using lifted = std::map<std::pair<word, word>, series>;

    lifted random_lifted(std::mt19937& rng) const
    {
        const auto& R = even_->ring(1);
        std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
        lifted out;
        for (const auto& s : mprime_)
            for (const auto& t : h1_) {
                if (s.size() + t.size() > order_) continue;
                const unsigned rest = order_ - static_cast<unsigned>(s.size() + t.size());
                series v(R, {rest, unbounded});
                // random polynomial in the H0 coordinates of degree <= rest
                std::vector<exponents> monos{exponents(R->size(), 0)};
                for (unsigned d = 0; d < rest; ++d) {
                    std::vector<exponents> next = monos;
                    for (const auto& m : monos)
                        for (std::size_t j = 0; j < R->size(); ++j) {
                            auto e = m;
                            ++e[j];
                            next.push_back(e);
                        }
                    std::sort(next.begin(), next.end());
                    next.erase(std::unique(next.begin(), next.end()), next.end());
                    monos = std::move(next);
                }
                for (const auto& e : monos) v.add_term(e, make_rational(num(rng), den(rng)));
                out[{s, t}] = v;
            }
        return out;
    }

    // Phi(a)(b) for admissible a in U(g), b in U(h) (indices of the respective orders).
    series evaluate_lifted(const lifted& Phi, const word& a, const word& b) const
    {
        const unsigned t = order_ - static_cast<unsigned>(a.size() + b.size());
        const auto& R = even_->ring(1);
        series out(R, {t, unbounded});
        // a = sum a_i psi(s_i), a_i in U(h); Phi(a_i psi(s_i))(b) = Phi(psi(s_i))(b a_i)
        for (const auto& [p, c] : hc_factorize(*Ug_, u_element(a, rational(1)), h_in_g_)) {
            u_element ba = Uh_->mul(u_element(b, rational(1)), to_h(p.first));
            // b a_i = sum c_j psi_h(t_j), c_j in U(h0); value = L_{c_j} Phi(psi(s_i))(psi_h(t_j))
            for (const auto& [q, d] : hc_factorize(*Uh_, ba, h0_in_h_)) {
                auto it = Phi.find({p.second, q.second});
                if (it == Phi.end()) continue;
                series v = it->second;
                for (auto z = q.first.rbegin(); z != q.first.rend() && !v.is_zero(); ++z)
                    v = even_->left_field(h0_label_index(*z), v, 1, 0);
                out += rational(c * d) * v;
            }
        }
        return out.with_trunc({t, unbounded});
    }

    // phi(a) = Phi(a)(1) on every admissible a of the even pair.
    hc_table reduce_table(const lifted& Phi) const
    {
        hc_table T{1, order_, even_->ring(1), {}};
        for (const auto& a : even_->monomials()) T.set({a}, evaluate_lifted(Phi, to_gh(a), word{}));
        return T;
    }
    hc_functional reduce(const lifted& Phi) const { return even_->restrict(reduce_table(Phi)); }

    // Phi(a)(b) = phi(b a), read from the full table of the reduced functional.
    series lift_value(const hc_table& phi, const word& a, const word& b) const
    {
        const unsigned t = order_ - static_cast<unsigned>(a.size() + b.size());
        series out(even_->ring(1), {t, unbounded});
        u_element ba = Ug_->mul(h_to_g(b), u_element(a, rational(1)));
        for (const auto& [w, c] : ba)
            for (const auto& [v, d] : even_->U().normalize(from_gh(w))) out += rational(c * d) * phi.at({v});
        return out.with_trunc({t, unbounded});
    }

    // Every (a, b) with |a| + |b| <= order where lift(reduce(Phi)) and Phi disagree.
    std::vector<std::pair<word, word>> round_trip_mismatches(const lifted& Phi) const
    {
        auto T = even_->table(reduce(Phi));
        std::vector<std::pair<word, word>> bad;
        for (const auto& a : Ug_->admissible_monomials(order_))
            for (const auto& b : Uh_->admissible_monomials(order_ - a.size()))
                if (!(lift_value(T, a, b) == evaluate_lifted(Phi, a, b))) bad.emplace_back(a, b);
        return bad;
    }

private:
    std::size_t h0_label_index(int x) const { return even_->g().index_of(hh_.element(static_cast<std::size_t>(x)).label); }
    u_element to_h(const word& w) const
    {
        word v;
        for (int x : w) v.push_back(static_cast<int>(hh_.index_of(gh_.element(static_cast<std::size_t>(x)).label)));
        return Uh_->normalize(v);
    }
    u_element h_to_g(const word& w) const
    {
        word v;
        for (int x : w) v.push_back(static_cast<int>(gh_.index_of(hh_.element(static_cast<std::size_t>(x)).label)));
        return Ug_->normalize(v);
    }
    word to_gh(const word& w) const
    {
        word v;
        for (int x : w)
            v.push_back(static_cast<int>(gh_.index_of(even_->g().element(static_cast<std::size_t>(x)).label)));
        return v;  // not admissible in general; evaluate_lifted normalizes
    }
    word from_gh(const word& w) const
    {
        word v;
        for (int x : w)
            v.push_back(static_cast<int>(even_->g().index_of(gh_.element(static_cast<std::size_t>(x)).label)));
        return v;
    }

    unsigned order_;
    std::unique_ptr<hc_pair> even_;
    lie_algebra gh_, hh_;
    std::shared_ptr<enveloping_algebra> Ug_, Uh_;
    std::vector<std::size_t> h_in_g_, h0_in_h_;
    std::size_t nh_ = 0;
    std::vector<word> mprime_, h1_;
};

}  // namespace grhopf

#endif
