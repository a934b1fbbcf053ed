// Structure-agnostic axiom checks over finite evaluation tables.
#ifndef GRHOPF_VERIFY_HPP
#define GRHOPF_VERIFY_HPP

#include "core.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <sstream>

namespace grhopf {

enum class flavor { hopf_algebra, left_bialgebra, hopf_algebroid };

inline std::string to_string(flavor f)
{
    switch (f) {
    case flavor::hopf_algebra: return "hopf-algebra";
    case flavor::left_bialgebra: return "left-bialgebra";
    case flavor::hopf_algebroid: return "hopf-algebroid";
    }
    return "?";
}

struct axiom_result {
    std::string name;
    std::string reference;  // stable label, e.g. "A3"
    bool pass = true;
    std::size_t checked = 0;
    std::string counterexample;
    std::string lhs, rhs, residual;
};

struct axiom_report {
    std::string subject;
    flavor kind = flavor::hopf_algebra;
    std::size_t carrier_size = 0;
    std::vector<axiom_result> results;

    bool pass() const
    {
        return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
    }
    const axiom_result* find(std::string_view name) const
    {
        for (const auto& r : results)
            if (r.name == name) return &r;
        return nullptr;
    }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["subject"] = subject;
        j["flavor"] = to_string(kind);
        j["carrier_size"] = carrier_size;
        j["pass"] = pass();
        auto& arr = j["axioms"] = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json a;
            a["ref"] = r.reference;
            a["name"] = r.name;
            a["pass"] = r.pass;
            a["checked"] = r.checked;
            if (!r.pass) {
                a["counterexample"] = r.counterexample;
                a["lhs"] = r.lhs;
                a["rhs"] = r.rhs;
                a["residual"] = r.residual;
            }
            arr.push_back(std::move(a));
        }
        return j;
    }

    std::string to_text() const
    {
        std::ostringstream os;
        os << subject << " [" << to_string(kind) << ", carrier " << carrier_size << "]\n";
        for (const auto& r : results) {
            os << (r.pass ? "  PASS " : "  FAIL ") << r.reference << " " << r.name << " (" << r.checked
               << " checked)\n";
            if (!r.pass) {
                os << "       at " << r.counterexample << "\n";
                os << "       lhs      = " << r.lhs << "\n";
                os << "       rhs      = " << r.rhs << "\n";
                os << "       residual = " << r.residual << "\n";
            }
        }
        os << (pass() ? "all axioms hold\n" : "axiom violations found\n");
        return os.str();
    }
};

// Tables of the structure maps on a finite carrier. E is the algebra, T2/T3
// the two- and three-fold tensor representations, R the base ring (the ground
// field for Hopf algebras). Every value type needs ==, binary - and a printer.
template <class E, class T2, class T3, class R>
struct structure_dossier {
    std::string subject;
    flavor kind = flavor::hopf_algebra;

    std::vector<E> carrier;
    std::vector<std::string> carrier_names;
    std::vector<R> base;  // elements of R for the unit/counit laws
    std::vector<std::string> base_names;

    std::function<std::string(const E&)> show;
    std::function<std::string(const T2&)> show2;
    std::function<std::string(const T3&)> show3;
    std::function<std::string(const R&)> show_base;

    // algebra
    std::function<E(const E&, const E&)> mul;
    std::function<E()> one;
    std::function<int(const E&)> parity;  // set for super-commutative algebras
    std::function<R(const R&, const R&)> base_mul;

    // coalgebra
    std::function<T2(const E&)> delta;
    std::function<R(const E&)> counit;
    std::function<T3(const T2&)> delta_id, id_delta;
    std::function<E(const T2&)> id_counit, counit_id;

    // tensor algebra
    std::function<T2(const T2&, const T2&)> mul2;
    std::function<T2()> one2;
    std::function<T2(const E&, const E&)> tensor;

    // units (eta_l doubles as the unit map k -> H for Hopf algebras)
    std::function<E(const R&)> eta_l, eta_r;

    // antipode
    std::function<E(const E&)> antipode;
    std::function<E(const T2&)> mu;
    std::function<T2(const T2&)> s_id, id_s;
};

namespace detail {

template <class T>
std::string safe_show(const std::function<std::string(const T&)>& f, const T& x)
{
    return f ? f(x) : std::string("<value>");
}

struct axiom_runner {
    axiom_report& report;

    template <class Fn>
    void require(const std::string& axiom, const Fn& f)
    {
        if (!f) throw input_error("axiom '" + axiom + "' needs a structure map that the dossier does not provide");
    }

    template <class T, class Show>
    void record(axiom_result& r, const std::string& where, const T& lhs, const T& rhs, const Show& show)
    {
        ++r.checked;
        if (!r.pass || lhs == rhs) return;
        r.pass = false;
        r.counterexample = where;
        r.lhs = safe_show(show, lhs);
        r.rhs = safe_show(show, rhs);
        r.residual = safe_show(show, T(lhs - rhs));
    }
};

}  // namespace detail

template <class E, class T2, class T3, class R>
axiom_report run_axiom_suite(const structure_dossier<E, T2, T3, R>& d)
{
    axiom_report rep;
    rep.subject = d.subject;
    rep.kind = d.kind;
    rep.carrier_size = d.carrier.size();
    if (d.carrier.size() != d.carrier_names.size()) throw input_error("dossier: carrier names do not match");
    if (d.base.size() != d.base_names.size()) throw input_error("dossier: base names do not match");
    detail::axiom_runner run{rep};
    const auto& C = d.carrier;
    const auto& names = d.carrier_names;
    const std::size_t n = C.size();
    const bool algebroid = d.kind == flavor::hopf_algebroid;
    const bool left = d.kind == flavor::left_bialgebra;
    auto pair_name = [&](std::size_t i, std::size_t j) { return "(" + names[i] + ", " + names[j] + ")"; };

    auto start = [&](const std::string& ref, const std::string& name) -> axiom_result& {
        rep.results.push_back({name, ref, true, 0, {}, {}, {}, {}});
        return rep.results.back();
    };

    // products are needed pairwise by several checks
    run.require("associativity", d.mul);
    run.require("unit", d.one);
    std::vector<std::vector<E>> prod(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prod[i].push_back(d.mul(C[i], C[j]));
    const E one = d.one();

    {
        auto& r = start("M1", "associativity");
        for (std::size_t i = 0; i < n && r.pass; ++i)
            for (std::size_t j = 0; j < n && r.pass; ++j)
                for (std::size_t k = 0; k < n && r.pass; ++k)
                    run.record(r, "(" + names[i] + ", " + names[j] + ", " + names[k] + ")", d.mul(prod[i][j], C[k]),
                               d.mul(C[i], prod[j][k]), d.show);
    }
    {
        auto& r = start("M2", "unit");
        for (std::size_t i = 0; i < n; ++i) {
            run.record(r, "1*" + names[i], d.mul(one, C[i]), C[i], d.show);
            run.record(r, names[i] + "*1", d.mul(C[i], one), C[i], d.show);
        }
    }
    if (d.parity) {
        auto& r = start("M3", "super-commutativity");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                E rhs = prod[j][i];
                if (d.parity(C[i]) & d.parity(C[j])) rhs = E(rhs - prod[j][i] - prod[j][i]);
                run.record(r, pair_name(i, j), prod[i][j], rhs, d.show);
            }
    }

    run.require("coassociativity", d.delta);
    run.require("counit", d.counit);
    std::vector<T2> del;
    for (const auto& x : C) del.push_back(d.delta(x));

    {
        run.require("counit laws", d.id_counit);
        run.require("counit laws", d.counit_id);
        auto& r = start(algebroid ? "A1" : "C1", "counit laws");
        for (std::size_t i = 0; i < n; ++i) {
            run.record(r, "(id*eps)Delta " + names[i], d.id_counit(del[i]), C[i], d.show);
            run.record(r, "(eps*id)Delta " + names[i], d.counit_id(del[i]), C[i], d.show);
        }
        // the slot maps must agree with eps itself
        if (d.kind == flavor::hopf_algebra) {
            run.require("counit laws", d.tensor);
            run.require("counit laws", d.eta_l);
            for (std::size_t i = 0; i < n; ++i)
                run.record(r, "(eps*id)(" + names[i] + " * 1)", d.counit_id(d.tensor(C[i], one)),
                           d.eta_l(d.counit(C[i])), d.show);
        }
    }
    {
        run.require("counit of units", d.eta_l);
        auto& r = start(algebroid ? "A1" : left ? "L2" : "C3", "counit of units");
        for (std::size_t b = 0; b < d.base.size(); ++b) {
            run.record(r, "eps eta_L " + d.base_names[b], d.counit(d.eta_l(d.base[b])), d.base[b], d.show_base);
            if (algebroid) {
                run.require("counit of units", d.eta_r);
                run.record(r, "eps eta_R " + d.base_names[b], d.counit(d.eta_r(d.base[b])), d.base[b],
                           d.show_base);
            }
        }
    }
    if (algebroid) {
        run.require("source/target laws", d.tensor);
        run.require("source/target laws", d.one);
        auto& r = start("A2", "source/target laws");
        for (std::size_t b = 0; b < d.base.size(); ++b) {
            E l = d.eta_l(d.base[b]), rr = d.eta_r(d.base[b]);
            run.record(r, "Delta eta_L " + d.base_names[b], d.delta(l), d.tensor(l, one), d.show2);
            run.record(r, "Delta eta_R " + d.base_names[b], d.delta(rr), d.tensor(one, rr), d.show2);
        }
    }
    if (left) {
        run.require("Delta on the base", d.tensor);
        auto& r = start("L1", "Delta on the base");
        for (std::size_t b = 0; b < d.base.size(); ++b) {
            E l = d.eta_l(d.base[b]);
            run.record(r, "Delta " + d.base_names[b], d.delta(l), d.tensor(l, one), d.show2);
        }
    }
    {
        run.require("coassociativity", d.delta_id);
        run.require("coassociativity", d.id_delta);
        auto& r = start(algebroid ? "A3" : "C2", "coassociativity");
        for (std::size_t i = 0; i < n; ++i) run.record(r, names[i], d.delta_id(del[i]), d.id_delta(del[i]), d.show3);
    }
    {
        run.require("Delta multiplicative", d.mul2);
        auto& r = start(algebroid ? "A4" : "B1", "Delta multiplicative");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n && r.pass; ++j)
                run.record(r, pair_name(i, j), d.delta(prod[i][j]), d.mul2(del[i], del[j]), d.show2);
    }
    {
        run.require("Delta unital", d.one2);
        auto& r = start(algebroid ? "A4" : "B2", "Delta unital");
        run.record(r, "Delta 1", d.delta(one), d.one2(), d.show2);
    }
    if (left) {
        run.require("twisted counit", d.eta_l);
        auto& r = start("L3", "twisted counit");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                run.record(r, pair_name(i, j), d.counit(prod[i][j]), d.counit(d.mul(C[i], d.eta_l(d.counit(C[j])))),
                           d.show_base);
    } else {
        run.require("counit multiplicative", d.base_mul);
        auto& r = start(algebroid ? "A4" : "B3", "counit multiplicative");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                run.record(r, pair_name(i, j), d.counit(prod[i][j]), d.base_mul(d.counit(C[i]), d.counit(C[j])),
                           d.show_base);
    }
    if (!left) {
        run.require("antipode identities", d.mu);
        run.require("antipode identities", d.s_id);
        run.require("antipode identities", d.id_s);
        run.require("antipode identities", d.eta_l);
        auto& r = start(algebroid ? "A5" : "S1", "antipode identities");
        const auto& eta_r = algebroid ? d.eta_r : d.eta_l;
        run.require("antipode identities", eta_r);
        for (std::size_t i = 0; i < n; ++i) {
            R e = d.counit(C[i]);
            run.record(r, "mu(id*S)Delta " + names[i], d.mu(d.id_s(del[i])), d.eta_l(e), d.show);
            run.record(r, "mu(S*id)Delta " + names[i], d.mu(d.s_id(del[i])), eta_r(e), d.show);
        }
        if (d.kind == flavor::hopf_algebra) {
            run.require("antipode identities", d.antipode);
            run.require("antipode identities", d.tensor);
            for (std::size_t i = 0; i < n; ++i) {
                const E s = d.antipode(C[i]);
                run.record(r, "(S*id)(" + names[i] + " * 1)", d.s_id(d.tensor(C[i], one)), d.tensor(s, one), d.show2);
                run.record(r, "(id*S)(1 * " + names[i] + ")", d.id_s(d.tensor(one, C[i])), d.tensor(one, s), d.show2);
            }
        }
    }
    return rep;
}

}  // namespace grhopf

#endif
