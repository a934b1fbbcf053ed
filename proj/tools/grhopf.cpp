// grhopf: command-line front end. Exit status 0 = ok, 1 = violation, 2 = bad input.
#include <grhopf/hopf.hpp>
#include <grhopf/io.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace grhopf;

namespace {

constexpr int ok = 0, violation = 1, bad_input = 2;

int print_report(const axiom_report& r, bool json)
{
    if (json)
        std::cout << r.to_json().dump(2) << "\n";
    else
        std::cout << r.to_text();
    return r.pass() ? ok : violation;
}

int check_jacobi_cmd(const std::string& alg)
{
    auto g = load_algebra(alg);
    auto rep = check_jacobi(g);
    const std::size_t n = g.dim();
    if (rep.pass()) {
        std::cout << "jacobi identity holds for " << g.name() << " (" << n * n * n << " triples)\n";
        return ok;
    }
    for (const auto& v : rep.violations)
        std::cout << "violation at (" << g.element(v.x).label << ", " << g.element(v.y).label << ", "
                  << g.element(v.z).label << "): " << to_string(g, v.residual) << "\n";
    std::cout << rep.violations.size() << " violating triples in " << g.name() << "\n";
    return violation;
}

int pbw_cmd(const std::string& expr, const std::string& alg)
{
    enveloping_algebra U(load_algebra(alg));
    std::cout << to_string(U, parse_u(U, expr)) << "\n";
    return ok;
}

int hopf_check_cmd(const std::string& alg, std::size_t max_len, bool json)
{
    return print_report(run_axiom_suite(make_u_dossier(load_algebra(alg), max_len)), json);
}

int bch_cmd(const std::string& alg, unsigned order, bool free, const std::string& x, const std::string& y)
{
    if (order < 1) throw input_error("--order must be at least 1");
    int status = ok;
    if (!alg.empty()) {
        if (x.empty() || y.empty()) throw input_error("bch needs two expressions X and Y");
        enveloping_algebra U(load_algebra(alg));
        auto z = dynkin_bch(U.lie(), parse_lie(U, x), parse_lie(U, y), order);
        std::cout << to_string(U.lie(), z) << "\n";
    } else if (!free) {
        throw input_error("bch needs --algebra (or --free)");
    }
    if (free) {
        auto s = dynkin_series(order);
        auto oracle = bch_oracle(order);
        const bool match = expand(s) == oracle;
        std::cout << "free: " << to_string(reduce_free_lie(s)) << "\n";
        std::cout << "oracle through order " << order << ": " << (match ? "match" : "mismatch") << "\n";
        if (!match) status = violation;
    }
    return status;
}

unsigned pair_order(const pair_spec& p, unsigned order)
{
    if (p.order && *p.order != order)
        throw input_error("--order " + std::to_string(order) + " disagrees with the pair file's order " +
                          std::to_string(*p.order));
    return order;
}

bool has_odd(const lie_algebra& g, const std::vector<std::string>& h)
{
    return std::any_of(h.begin(), h.end(), [&](const std::string& l) { return g.parity(g.index_of(l)) != 0; });
}

int hc_build_cmd(const std::string& file, unsigned order)
{
    auto spec = load_pair(file);
    hc_pair P(spec.g, spec.h, pair_order(spec, order));
    std::cout << "g: " << P.g().name() << " (dim " << P.g().dim() << ")\n";
    std::cout << "h:";
    for (std::size_t j = 0; j < P.nh(); ++j) std::cout << " " << P.g().element(j).label;
    std::cout << (P.nh() ? "\n" : " 0\n");
    std::cout << "order: " << order << "\n";
    for (std::size_t j = 0; j < P.nh(); ++j)
        std::cout << "Z^" << P.g().element(j).label << " = " << P.law().component[j].to_string() << "\n";
    for (std::size_t j = 0; j < P.nh(); ++j)
        std::cout << "inverse^" << P.g().element(j).label << " = " << P.inverse()[j].to_string() << "\n";
    auto basis = P.basis(order);
    std::cout << "basis (" << basis.size() << "):\n";
    for (const auto& [name, f] : basis) std::cout << "  " << name << "\n";
    return ok;
}

int hc_check_cmd(const std::string& file, unsigned order, bool json)
{
    auto spec = load_pair(file);
    pair_order(spec, order);
    if (has_odd(spec.g, spec.h)) {
        super_reduction S(spec.g, spec.h, order);
        std::mt19937 rng(20240229);
        std::size_t bad = 0;
        for (int k = 0; k < 20; ++k) bad += S.round_trip_mismatches(S.random_lifted(rng)).size();
        std::cout << "super reduction of (" << spec.g.name() << ", h) at order " << order << ": "
                  << (bad ? std::to_string(bad) + " round-trip mismatches" : "round trip exact on 20 functionals")
                  << "\n";
        return bad ? violation : ok;
    }
    hc_pair P(spec.g, spec.h, order);
    auto rep = run_axiom_suite(make_hc_dossier(P));
    int status = print_report(rep, json);
    if (!json) {
        std::size_t defects = 0;
        for (const auto& [name, f] : P.basis(order)) {
            defects += P.equivariance_defects(P.coproduct(f)).size();
            defects += P.equivariance_defects(P.table(P.antipode(f))).size();
        }
        std::cout << "equivariance under Delta and S: " << (defects ? std::to_string(defects) + " defects" : "preserved")
                  << "\n";
        if (defects) status = violation;
    }
    return status;
}

int algebroid_check_cmd(const std::string& file, unsigned order, bool json)
{
    if (order < 1) throw input_error("--order must be at least 1");
    auto spec = load_action(file);
    const auto& pair = spec.pair;
    int status = ok;
    auto merge = [&](int s) { status = std::max(status, s); };

    action_hopf H(pair, order);
    merge(print_report(run_axiom_suite(make_action_dossier(H)), json));
    // the left bialgebroid check is cubic in the carrier; cap its word length at 2
    merge(print_report(run_axiom_suite(make_left_dossier(pair, std::min<unsigned>(order, 2))), json));
    if (spec.has_h) {
        action_hc A(pair, spec.h, order, spec.h_flow);
        merge(print_report(run_axiom_suite(make_action_hc_dossier(A)), json));
    }
    return status;
}

int ure_cmd(const std::string& expr, const std::string& file)
{
    auto spec = load_action(file);
    std::cout << spec.pair.to_string(parse_ure(spec.pair, expr)) << "\n";
    return ok;
}

int jets_cmd(std::size_t dim, unsigned order, const std::string& f1, const std::string& f2, const std::string& op)
{
    jet_space J(dim, order);
    const auto& P = J.pair();
    const series a = P.poly(f1), b = P.poly(f2);
    const jet_element x{{{a, b}}};
    const auto& H = J.hopf();
    std::optional<ure_element> p;
    if (!op.empty()) p = parse_ure(P, op);
    std::cout << "j(" << b.to_string() << ") = " << H.show(J.j(b)) << "\n";
    std::cout << "phi = " << H.show(J.canonical(x)) << "\n";
    std::cout << "S(phi) = " << H.show(J.canonical(J.antipode(x))) << "\n";
    if (p) std::cout << "<" << P.to_string(*p) << ", phi> = " << J.pairing(*p, x).to_string() << "\n";
    return ok;
}

int export_cmd(const std::string& name)
{
    std::cout << dump(algebra_to_json(builtin_algebra(name)));
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"graded Lie superalgebras, enveloping Hopf algebras and Hopf algebroids"};
    app.require_subcommand(1);
    int status = ok;

    std::string alg, expr, file, x, y, f1, f2, op, name;
    std::size_t max_len = 0, dim = 1;
    unsigned order = 0;
    bool json = false, free = false;

    auto* jac = app.add_subcommand("check-jacobi", "check the Jacobi identity on all basis triples");
    jac->add_option("algebra", alg, "algebra file or builtin:NAME")->required();
    jac->callback([&] { status = check_jacobi_cmd(alg); });

    auto* pbw = app.add_subcommand("pbw", "normal form of an expression in U(g)");
    pbw->add_option("expr", expr)->required();
    pbw->add_option("--algebra", alg)->required();
    pbw->callback([&] { status = pbw_cmd(expr, alg); });

    auto* hopf = app.add_subcommand("hopf-check", "Hopf axioms of U(g) on admissible monomials");
    hopf->add_option("--algebra", alg)->required();
    hopf->add_option("--max-len", max_len)->required();
    hopf->add_flag("--json", json);
    hopf->callback([&] { status = hopf_check_cmd(alg, max_len, json); });

    auto* bch = app.add_subcommand("bch", "Baker-Campbell-Hausdorff series Z(X, Y)");
    bch->add_option("--algebra", alg);
    bch->add_option("--order", order)->required();
    bch->add_flag("--free", free, "also print the free series and compare with the associative oracle");
    bch->add_option("X", x);
    bch->add_option("Y", y);
    bch->callback([&] { status = bch_cmd(alg, order, free, x, y); });

    auto* hcb = app.add_subcommand("hc-build", "formal group law and basis of a Harish-Chandra pair");
    hcb->add_option("pair", file)->required();
    hcb->add_option("--order", order)->required();
    hcb->callback([&] { status = hc_build_cmd(file, order); });

    auto* hcc = app.add_subcommand("hc-check", "Hopf axioms of a Harish-Chandra pair");
    hcc->add_option("pair", file)->required();
    hcc->add_option("--order", order)->required();
    hcc->add_flag("--json", json);
    hcc->callback([&] { status = hc_check_cmd(file, order, json); });

    auto* alb = app.add_subcommand("algebroid-check", "Hopf algebroid axioms of an action");
    alb->add_option("action", file)->required();
    alb->add_option("--order", order)->required();
    alb->add_flag("--json", json);
    alb->callback([&] { status = algebroid_check_cmd(file, order, json); });

    auto* ure = app.add_subcommand("ure", "normal form in the enveloping algebroid of an action");
    ure->add_option("expr", expr)->required();
    ure->add_option("--action", file)->required();
    ure->callback([&] { status = ure_cmd(expr, file); });

    auto* jets = app.add_subcommand("jets", "jets F1 j(F2) on affine space: table, antipode, pairing");
    jets->add_option("--dim", dim)->required();
    jets->add_option("--order", order)->required();
    jets->add_option("F1", f1)->required();
    jets->add_option("F2", f2)->required();
    jets->add_option("--op", op, "differential operator to pair with, e.g. \"d_z*z\"");
    jets->callback([&] { status = jets_cmd(dim, order, f1, f2, op); });

    auto* exp = app.add_subcommand("export-builtin", "print a builtin algebra as JSON");
    exp->add_option("name", name)->required();
    exp->callback([&] { status = export_cmd(name); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    return status;
}
