// Z-graded Lie superalgebras given by structure constants.
#ifndef GRHOPF_LIE_HPP
#define GRHOPF_LIE_HPP

#include "core.hpp"

#include <memory>
#include <optional>

namespace grhopf {

template <class C>
using lie_vec = lincomb<std::size_t, C>;
using lie_vector = lie_vec<rational>;

// Passing a coefficient past something of parity p. Rationals are even.
inline const rational& koszul_twist(const rational& a, int) { return a; }
inline int coeff_parity(const rational&) { return 0; }

struct bracket_entry {
    std::string left, right;
    std::vector<std::pair<std::string, rational>> terms;
};

class lie_algebra {
public:
    lie_algebra() = default;

    lie_algebra(std::string name, std::vector<basis_element> basis, const std::vector<bracket_entry>& brackets,
                basis_order order = {})
        : name_(std::move(name)), order_(std::move(order))
    {
        std::stable_sort(basis.begin(), basis.end(),
                         [&](const auto& a, const auto& b) { return compare(a, b, order_) < 0; });
        basis_ = std::move(basis);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const auto& e = basis_[i];
            if (e.label.empty()) throw input_error("empty generator label");
            if (e.parity != 0 && e.parity != 1) throw input_error("parity of '" + e.label + "' must be 0 or 1");
            if (!index_.emplace(e.label, i).second) throw input_error("duplicate generator '" + e.label + "'");
        }
        const std::size_t n = basis_.size();
        table_.assign(n * n, lie_vector{});
        std::vector<bool> given(n * n, false);
        for (const auto& b : brackets) {
            std::size_t i = index_of(b.left), j = index_of(b.right);
            lie_vector v;
            for (const auto& [lab, c] : b.terms) v.add(index_of(lab), c);
            for (const auto& [k, c] : v) {
                if (basis_[k].degree != basis_[i].degree + basis_[j].degree)
                    throw input_error("bracket [" + b.left + "," + b.right + "] has a term '" + basis_[k].label +
                                      "' of the wrong degree");
                if (basis_[k].parity != ((basis_[i].parity + basis_[j].parity) & 1))
                    throw input_error("bracket [" + b.left + "," + b.right + "] has a term '" + basis_[k].label +
                                      "' of the wrong parity");
            }
            if (i > j) {
                v = rational(swap_sign(j, i)) * v;
                std::swap(i, j);
            }
            if (given[i * n + j]) throw input_error("bracket [" + b.left + "," + b.right + "] given twice");
            given[i * n + j] = true;
            if (i == j && basis_[i].parity == 0 && !v.empty())
                throw input_error("even generator '" + basis_[i].label + "' has nonzero self-bracket");
            table_[i * n + j] = std::move(v);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) table_[j * n + i] = rational(swap_sign(i, j)) * table_[i * n + j];
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<basis_element>& basis() const { return basis_; }
    const basis_element& element(std::size_t i) const { return basis_.at(i); }
    int parity(std::size_t i) const { return basis_[i].parity; }
    int degree(std::size_t i) const { return basis_[i].degree; }
    const basis_order& order() const { return order_; }

    std::optional<std::size_t> find(std::string_view label) const
    {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(std::string_view label) const
    {
        if (auto i = find(label)) return *i;
        throw input_error("unknown generator '" + std::string(label) + "'" + suggestion(label));
    }
    std::string suggestion(std::string_view label) const
    {
        std::vector<std::string> labels;
        for (const auto& e : basis_) labels.push_back(e.label);
        auto c = closest(label, labels);
        return c.empty() ? std::string{} : " (did you mean '" + c + "'?)";
    }

    // [x_i, x_j]
    const lie_vector& structure(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

    // (-(-1)^{p_i p_j}): [x_j, x_i] = swap_sign * [x_i, x_j]
    int swap_sign(std::size_t i, std::size_t j) const { return (basis_[i].parity & basis_[j].parity) ? 1 : -1; }

    lie_vector generator(std::size_t i) const { return lie_vector(i, rational(1)); }
    lie_vector generator(std::string_view label) const { return generator(index_of(label)); }

    // Brackets for i <= j in basis order, nonzero only.
    std::vector<bracket_entry> stored_brackets() const
    {
        std::vector<bracket_entry> out;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i; j < dim(); ++j) {
                const auto& v = structure(i, j);
                if (v.empty()) continue;
                bracket_entry b{basis_[i].label, basis_[j].label, {}};
                for (const auto& [k, c] : v) b.terms.emplace_back(basis_[k].label, c);
                out.push_back(std::move(b));
            }
        return out;
    }

    lie_algebra with_order(basis_order order) const { return lie_algebra(name_, basis_, stored_brackets(), order); }
    lie_algebra with_name(std::string name) const { return lie_algebra(name, basis_, stored_brackets(), order_); }

    // Structure constants equal after matching generators by label.
    bool same_structure(const lie_algebra& o) const
    {
        if (dim() != o.dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i) {
            auto j = o.find(basis_[i].label);
            if (!j || o.basis_[*j] != basis_[i]) return false;
        }
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) {
                lie_vector mapped;
                for (const auto& [k, c] : structure(i, j)) mapped.add(*o.find(basis_[k].label), c);
                if (!(mapped == o.structure(*o.find(basis_[i].label), *o.find(basis_[j].label)))) return false;
            }
        return true;
    }

    bool operator==(const lie_algebra& o) const
    {
        return name_ == o.name_ && basis_ == o.basis_ && order_ == o.order_ && table_ == o.table_;
    }

private:
    std::string name_;
    std::vector<basis_element> basis_;
    basis_order order_;
    std::map<std::string, std::size_t> index_;
    std::vector<lie_vector> table_;
};

// Bilinear bracket. Coefficients sit to the right of generators:
// [x_i a, x_j b] = (-1)^{p(a) p(x_j)} [x_i, x_j] a b.
template <class C>
lie_vec<C> bracket(const lie_algebra& g, const lie_vec<C>& x, const lie_vec<C>& y)
{
    lie_vec<C> out;
    for (const auto& [i, a] : x) {
        if (i >= g.dim()) throw input_error("bracket: generator index out of range");
        for (const auto& [j, b] : y) {
            if (j >= g.dim()) throw input_error("bracket: generator index out of range");
            const auto& s = g.structure(i, j);
            if (s.empty()) continue;
            C ab = koszul_twist(a, g.parity(j)) * b;
            for (const auto& [k, c] : s) out.add(k, C(c * ab));
        }
    }
    return out;
}

inline lie_vector bracket(const lie_algebra& g, std::size_t i, std::size_t j) { return g.structure(i, j); }

struct jacobi_violation {
    std::size_t x, y, z;
    lie_vector residual;
};

struct jacobi_report {
    std::vector<jacobi_violation> violations;
    bool pass() const { return violations.empty(); }
};

// [x,[y,z]] - [[x,y],z] - (-1)^{p(x)p(y)} [y,[x,z]] on all basis triples.
inline jacobi_report check_jacobi(const lie_algebra& g)
{
    jacobi_report rep;
    const std::size_t n = g.dim();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                auto gx = g.generator(x), gy = g.generator(y), gz = g.generator(z);
                lie_vector r = bracket(g, gx, g.structure(y, z));
                r -= bracket(g, g.structure(x, y), gz);
                lie_vector t = bracket(g, gy, g.structure(x, z));
                r -= rational((g.parity(x) & g.parity(y)) ? -1 : 1) * t;
                if (!r.empty()) rep.violations.push_back({x, y, z, std::move(r)});
            }
    return rep;
}

// The grading operator: multiplies each generator by its degree.
struct euler_derivation {
    const lie_algebra* g;

    lie_vector operator()(const lie_vector& v) const
    {
        lie_vector out;
        for (const auto& [k, c] : v) out.add(k, rational(g->degree(k) * c));
        return out;
    }

    // E[x,y] - [Ex,y] - [x,Ey]
    lie_vector residual(std::size_t i, std::size_t j) const
    {
        const auto& self = *this;
        lie_vector x = g->generator(i), y = g->generator(j);
        return self(g->structure(i, j)) - bracket(*g, self(x), y) - bracket(*g, x, self(y));
    }
};

inline bool is_closed(const lie_algebra& g, const std::vector<std::size_t>& idx)
{
    std::vector<bool> in(g.dim(), false);
    for (auto i : idx) in.at(i) = true;
    for (auto i : idx)
        for (auto j : idx)
            for (const auto& [k, c] : g.structure(i, j))
                if (!in[k]) return false;
    return true;
}

// The subalgebra spanned by the given generators, as an algebra of its own.
inline lie_algebra subalgebra(const lie_algebra& g, const std::vector<std::string>& labels, std::string name = {},
                              basis_order order = {})
{
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(g.index_of(l));
    if (!is_closed(g, idx)) throw input_error("generators do not span a subalgebra");
    std::vector<basis_element> basis;
    for (auto i : idx) basis.push_back(g.element(i));
    std::vector<bracket_entry> br;
    for (auto i : idx)
        for (auto j : idx) {
            if (compare(g.element(i), g.element(j), g.order()) > 0) continue;
            bracket_entry b{g.element(i).label, g.element(j).label, {}};
            for (const auto& [k, c] : g.structure(i, j)) b.terms.emplace_back(g.element(k).label, c);
            if (!b.terms.empty()) br.push_back(std::move(b));
        }
    return lie_algebra(name.empty() ? g.name() + "_sub" : name, basis, br, order);
}

namespace builtin {

inline lie_algebra sl2_graded()
{
    return lie_algebra("sl2_graded", {{"e", 1, 0}, {"f", -1, 0}, {"h", 0, 0}},
                       {{"h", "e", {{"e", 1}}}, {"h", "f", {{"f", -1}}}, {"e", "f", {{"h", 2}}}});
}

inline lie_algebra heisenberg_graded()
{
    return lie_algebra("heisenberg_graded", {{"x", 1, 0}, {"y", -1, 0}, {"z", 0, 0}}, {{"x", "y", {{"z", 1}}}});
}

// Heisenberg plus an odd degree-0 generator theta with [theta,theta] = c z.
inline lie_algebra heisenberg_odd(const rational& c = 0)
{
    std::vector<bracket_entry> br{{"x", "y", {{"z", 1}}}};
    if (!is_zero(c)) br.push_back({"theta", "theta", {{"z", c}}});
    return lie_algebra("heisenberg_odd", {{"x", 1, 0}, {"y", -1, 0}, {"z", 0, 0}, {"theta", 0, 1}}, br);
}

inline lie_algebra abelian(const std::vector<basis_element>& basis, std::string name = "abelian")
{
    return lie_algebra(std::move(name), basis, {});
}

namespace detail {
// g plus a copy acting as the adjoint module: [x, c(y)] = c([x,y]), [c(x), c(y)] = 0.
inline lie_algebra doubled(const lie_algebra& g, const std::string& suffix, int degree_shift, int parity_flip,
                           const std::string& name)
{
    std::vector<basis_element> basis = g.basis();
    for (const auto& e : g.basis()) basis.push_back({e.label + suffix, e.degree + degree_shift, e.parity ^ parity_flip});
    std::vector<bracket_entry> br = g.stored_brackets();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
            bracket_entry b{g.element(i).label, g.element(j).label + suffix, {}};
            for (const auto& [k, c] : g.structure(i, j)) b.terms.emplace_back(g.element(k).label + suffix, c);
            if (!b.terms.empty()) br.push_back(std::move(b));
        }
    return lie_algebra(name, basis, br);
}
}  // namespace detail

// Copies x_bar of every generator in degree deg(x) - 1, same parity.
inline lie_algebra shift_tangent(const lie_algebra& g)
{
    return detail::doubled(g, "_bar", -1, 0, "shift_tangent(" + g.name() + ")");
}

// Copies x_pi of every generator in the same degree, opposite parity.
inline lie_algebra pi_tangent(const lie_algebra& g)
{
    for (const auto& e : g.basis())
        if (e.parity != 0) throw input_error("pi_tangent expects a purely even algebra");
    return detail::doubled(g, "_pi", 0, 1, "pi_tangent(" + g.name() + ")");
}

struct gl_block {
    int degree = 0;
    int parity = 0;
    int dim = 1;
};

// gl(V): E_ab of degree deg_a - deg_b and parity p_a + p_b,
// [E_ab, E_cd] = d_bc E_ad - (-1)^{p(E_ab) p(E_cd)} d_da E_cb.
inline lie_algebra gl(const std::vector<gl_block>& blocks)
{
    std::vector<int> deg, par;
    for (const auto& b : blocks) {
        if (b.dim < 0 || (b.parity != 0 && b.parity != 1)) throw input_error("gl: invalid block");
        for (int k = 0; k < b.dim; ++k) {
            deg.push_back(b.degree);
            par.push_back(b.parity);
        }
    }
    const int n = static_cast<int>(deg.size());
    auto label = [n](int a, int b) {
        return n < 10 ? "E" + std::to_string(a + 1) + std::to_string(b + 1)
                      : "E" + std::to_string(a + 1) + "_" + std::to_string(b + 1);
    };
    std::vector<basis_element> basis;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) basis.push_back({label(a, b), deg[a] - deg[b], (par[a] + par[b]) & 1});
    lie_algebra shape("gl", basis, {});
    std::vector<bracket_entry> br;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const auto& l = shape.element(shape.index_of(label(a, b)));
                    const auto& r = shape.element(shape.index_of(label(c, d)));
                    if (compare(l, r) > 0) continue;
                    int pab = (par[a] + par[b]) & 1, pcd = (par[c] + par[d]) & 1;
                    lie_vector v;
                    if (b == c) v.add(shape.index_of(label(a, d)), rational(1));
                    if (d == a) v.add(shape.index_of(label(c, b)), rational((pab & pcd) ? 1 : -1));
                    bracket_entry e{l.label, r.label, {}};
                    for (const auto& [k, x] : v) e.terms.emplace_back(shape.element(k).label, x);
                    if (!e.terms.empty()) br.push_back(std::move(e));
                }
    std::string name = "gl(";
    for (std::size_t i = 0; i < blocks.size(); ++i)
        name += (i ? "," : "") + std::to_string(blocks[i].degree) + ":" + std::to_string(blocks[i].parity) + ":" +
                std::to_string(blocks[i].dim);
    return lie_algebra(name + ")", basis, br);
}

}  // namespace builtin

}  // namespace grhopf

#endif
