// The Hopf superalgebra U(g) as an axiom dossier on admissible monomials.
#ifndef GRHOPF_HOPF_HPP
#define GRHOPF_HOPF_HPP

#include "expr.hpp"
#include "verify.hpp"

#include <memory>

namespace grhopf {

using u_dossier = structure_dossier<u_element, u_tensor, u_tensor3, rational>;
using antipode_map = std::function<u_element(const u_element&)>;

// Carrier: admissible monomials of length <= max_len. A replacement antipode can
// be passed in to exercise the antipode check.
inline u_dossier make_u_dossier(std::shared_ptr<const enveloping_algebra> U, std::size_t max_len,
                                antipode_map antipode = {})
{
    const enveloping_algebra* u = U.get();
    if (!antipode) antipode = [u](const u_element& a) { return u->antipode(a); };
    u_dossier d;
    d.subject = "U(" + U->lie().name() + "), filtration <= " + std::to_string(max_len);
    d.kind = flavor::hopf_algebra;
    for (const auto& w : U->admissible_monomials(max_len)) {
        d.carrier.emplace_back(w, rational(1));
        d.carrier_names.push_back(word_to_string(U->lie(), w));
    }
    d.base = {rational(1), make_rational(-5, 3)};
    d.base_names = {"1", "-5/3"};
    // keep U alive for as long as the closures
    d.show = [U](const u_element& x) { return to_string(U->lie(), x); };
    d.show2 = [U](const u_tensor& t) { return to_string(U->lie(), t); };
    d.show3 = [U](const u_tensor3& t) { return to_string(U->lie(), t); };
    d.show_base = [](const rational& r) { return to_string(r); };
    d.mul = [u](const u_element& a, const u_element& b) { return u->mul(a, b); };
    d.one = [u] { return u->one(); };
    d.base_mul = [](const rational& a, const rational& b) { return rational(a * b); };
    d.delta = [u](const u_element& a) { return u->coproduct(a); };
    d.counit = [u](const u_element& a) { return u->counit(a); };
    d.delta_id = [u](const u_tensor& t) { return u->delta_id(t); };
    d.id_delta = [u](const u_tensor& t) { return u->id_delta(t); };
    d.id_counit = [u](const u_tensor& t) { return u->id_counit(t); };
    d.counit_id = [u](const u_tensor& t) { return u->counit_id(t); };
    d.mul2 = [u](const u_tensor& x, const u_tensor& y) { return u->tensor_mul(x, y); };
    d.one2 = [] { return u_tensor(word_pair{}, rational(1)); };
    d.tensor = [](const u_element& a, const u_element& b) {
        u_tensor out;
        for (const auto& [x, c] : a)
            for (const auto& [y, e] : b) out.add(word_pair{x, y}, rational(c * e));
        return out;
    };
    d.eta_l = [u](const rational& c) { return u->scalar(c); };
    d.antipode = antipode;
    d.mu = [u](const u_tensor& t) {
        u_element out;
        for (const auto& [p, c] : t) out.add(u->mul(u_element(p.first, rational(1)), u_element(p.second, rational(1))), c);
        return out;
    };
    // S is even, so no Koszul sign appears when it passes a leg
    d.s_id = [antipode](const u_tensor& t) {
        u_tensor out;
        for (const auto& [p, c] : t)
            for (const auto& [w, e] : antipode(u_element(p.first, rational(1)))) out.add(word_pair{w, p.second}, rational(c * e));
        return out;
    };
    d.id_s = [antipode](const u_tensor& t) {
        u_tensor out;
        for (const auto& [p, c] : t)
            for (const auto& [w, e] : antipode(u_element(p.second, rational(1)))) out.add(word_pair{p.first, w}, rational(c * e));
        return out;
    };
    return d;
}

inline u_dossier make_u_dossier(const lie_algebra& g, std::size_t max_len, antipode_map antipode = {})
{
    return make_u_dossier(std::make_shared<const enveloping_algebra>(g), max_len, std::move(antipode));
}

// Admissible S-monomials of length <= max_len where (psi (x) psi) Delta_Sym and
// Delta_U psi disagree. psi is even, so no sign enters on the tensor.
inline std::vector<word> psi_coalgebra_mismatches(const enveloping_algebra& U, std::size_t max_len)
{
    std::vector<word> bad;
    for (const auto& w : U.admissible_monomials(max_len)) {
        const sym_element s(w, rational(1));
        const u_tensor lhs = U.coproduct(U.psi(s));
        u_tensor rhs;
        for (const auto& [p, c] : U.sym_coproduct(s))
            for (const auto& [a, ca] : U.psi_monomial(p.first))
                for (const auto& [b, cb] : U.psi_monomial(p.second)) rhs.add(word_pair{a, b}, rational(c * ca * cb));
        if (!(lhs == rhs)) bad.push_back(w);
    }
    return bad;
}

}  // namespace grhopf

#endif
