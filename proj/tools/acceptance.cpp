// Acceptance run: one PASS/FAIL line per criterion 1-10.
// usage: acceptance [--cli PATH --golden DIR] [criterion numbers...]
#include <grhopf/hopf.hpp>
#include <grhopf/io.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace grhopf;
using namespace grhopf::builtin;
namespace fs = std::filesystem;

namespace {

struct outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
};

std::string cli_path, golden_dir;

bool all_axioms(const axiom_report& r, outcome& o)
{
    std::size_t checked = 0;
    for (const auto& a : r.results) checked += a.checked;
    o.notes.push_back(r.subject + ": " + std::to_string(checked) + " instances");
    if (!r.pass()) {
        std::string first;
        for (const auto& a : r.results)
            if (!a.pass) {
                first = a.reference + " " + a.name + " at " + a.counterexample;
                break;
            }
        o.require(false, r.subject + ": " + first);
    }
    return r.pass();
}

outcome jacobi_suite()
{
    outcome o;
    for (const auto& g : {sl2_graded(), heisenberg_graded(), shift_tangent(sl2_graded()), pi_tangent(sl2_graded()),
                          gl({{0, 0, 1}, {1, 1, 1}})})
        o.require(check_jacobi(g).pass(), "Jacobi for " + g.name());
    return o;
}

outcome pbw_rank()
{
    outcome o;
    std::size_t words = 0;
    const auto g = sl2_graded();
    const auto rank = pbw_rank_oracle(g, 3, &words);
    o.require(admissible_count(g, 3) == 20, "sl2 admissible count 20");
    o.require(rank == 20, "sl2 oracle rank 20, got " + std::to_string(rank));
    o.require(words == 40, "sl2 oracle word count 40, got " + std::to_string(words));
    const auto t = shift_tangent(sl2_graded());
    o.require(admissible_count(t, 2) == pbw_rank_oracle(t, 2), "shift_tangent(sl2) count equals rank at length 2");
    return o;
}

outcome psi_coalgebra()
{
    outcome o;
    o.require(psi_coalgebra_mismatches(enveloping_algebra(sl2_graded()), 4).empty(), "sl2 through length 4");
    o.require(psi_coalgebra_mismatches(enveloping_algebra(pi_tangent(sl2_graded())), 3).empty(),
              "pi_tangent(sl2) through length 3");
    return o;
}

outcome hopf_suite()
{
    outcome o;
    all_axioms(run_axiom_suite(make_u_dossier(sl2_graded(), 4)), o);
    all_axioms(run_axiom_suite(make_u_dossier(heisenberg_odd(1), 3)), o);
    all_axioms(run_axiom_suite(make_u_dossier(gl({{0, 0, 1}, {1, 1, 1}}), 3)), o);
    return o;
}

outcome bch_suite()
{
    outcome o;
    const auto s = dynkin_series(4);
    const auto oracle = bch_oracle(4);
    o.require(expand(s) == oracle, "Dynkin series equals the associative oracle through order 4");
    const auto reduced = reduce_free_lie(s);
    auto coeff = [&](const free_word& w) {
        auto c = reduced.find(w);
        return c ? *c : rational(0);
    };
    o.require(coeff({0, 1}) == make_rational(1, 2), "[u,v] coefficient 1/2");
    o.require(coeff({0, 0, 1}) == make_rational(1, 12), "[u,[u,v]] coefficient 1/12");
    // the oracle itself: UV - VU carries 1/2, UUV - 2UVU + VUU carries 1/12
    auto oc = [&](const free_word& w) {
        auto c = oracle.find(w);
        return c ? *c : rational(0);
    };
    o.require(oc({0, 1}) == make_rational(1, 2) && oc({1, 0}) == make_rational(-1, 2), "oracle order 2");
    o.require(oc({0, 0, 1}) == make_rational(1, 12) && oc({0, 1, 0}) == make_rational(-1, 6), "oracle order 3");

    const auto h = heisenberg_graded();
    const rational a = make_rational(3, 2), b = make_rational(-2, 5);
    const lie_vector x(h.index_of("x"), a), y(h.index_of("y"), b);
    lie_vector closed = x + y;
    closed.add(h.index_of("z"), rational(a * b / 2));
    for (unsigned N = 2; N <= 8; ++N)
        o.require(dynkin_bch(h, x, y, N) == closed, "Heisenberg closed form at order " + std::to_string(N));
    for (const auto& g : {sl2_graded(), heisenberg_graded()}) {
        bool zero = true;
        for (const auto& r : group_law_associativity_residual(g, 4)) zero = zero && r.is_zero();
        o.require(zero, "formal group law associative at order 4 for " + g.name());
    }
    return o;
}

outcome hc_suite()
{
    outcome o;
    const std::vector<std::pair<lie_algebra, std::vector<std::string>>> cases{{heisenberg_graded(), {"z"}},
                                                                               {sl2_graded(), {"h"}}};
    for (const auto& [g, h] : cases) {
        hc_pair P(g, h, 3);
        all_axioms(run_axiom_suite(make_hc_dossier(P)), o);
        std::size_t defects = 0;
        for (const auto& [name, f] : P.basis(3)) {
            defects += P.equivariance_defects(P.coproduct(f)).size();
            defects += P.equivariance_defects(P.table(P.antipode(f))).size();
        }
        o.require(defects == 0, "equivariance under Delta and S for " + g.name());
    }
    super_reduction S(heisenberg_odd(1), {"theta", "z"}, 3);
    std::mt19937 rng(7);
    std::size_t bad = 0;
    for (int k = 0; k < 20; ++k) bad += S.round_trip_mismatches(S.random_lifted(rng)).size();
    o.require(bad == 0, "super reduction round trip on 20 random functionals");
    return o;
}

lie_rinehart_pair weyl()
{
    auto R = make_ring({{"z", 0, 0, false}});
    return lie_rinehart_pair(abelian({{"x", 0, 0}}, "line"), R, parse_anchor(R, {{"x", "d/dz"}}));
}

outcome algebroid_suite()
{
    outcome o;
    const auto W = weyl();
    const auto x = W.gen(0), z = W.from_poly(W.var(0));
    o.require(W.commutator(x, z) == W.one(), "xz - zx = 1");

    auto [ops, rank] = operator_rank(W, 3, 2, 6);
    o.require(ops == 12 && rank == ops, "R-linear independence: rank " + std::to_string(rank) + " of " +
                                            std::to_string(ops));

    const auto words = W.mixed_words(3);
    std::size_t twisted_bad = 0;
    for (const auto& u : words)
        for (const auto& v : words) {
            auto a = W.normalize(u), b = W.normalize(v);
            if (!(W.epsilon(W.mul(a, b)) == W.epsilon(W.mul(a, W.from_poly(W.epsilon(b)))))) ++twisted_bad;
        }
    o.require(twisted_bad == 0, "twisted counit on all pairs of words of length <= 3");

    for (const auto& u : {x, z, W.mul(x, x), W.mul(z, W.mul(x, x)), W.mul(x, W.mul(x, x))})
        o.require(W.coincidence_check(W.coproduct(u), W.var(0)), "coproduct in the coincidence locus");
    o.require(!W.coincidence_check(W.tensor(x, W.one()), W.var(0)), "x (x) 1 is outside the coincidence locus");

    action_hopf H(W, 3);
    all_axioms(run_axiom_suite(make_action_dossier(H)), o);
    all_axioms(run_axiom_suite(make_left_dossier(W, 3)), o);
    {
        auto R = make_ring({{"z", 0, 0, false}});
        lie_rinehart_pair L(sl2_graded(), R, parse_anchor(R, {{"e", "d/dz"}, {"h", "-z*d/dz"}, {"f", "-z^2*d/dz"}}));
        action_hc A(L, {"e", "h"}, 2);
        all_axioms(run_axiom_suite(make_action_hc_dossier(A)), o);
    }
    for (unsigned k = 0; k <= 3; ++k) {
        auto f = W.poly("z^" + std::to_string(k));
        o.require(H.antipode(H.eta_l(f)) == H.eta_r(f), "S eta_L = eta_R on z^" + std::to_string(k));
    }

    jet_space J(1, 3);
    const auto& P = J.pair();
    std::vector<series> polys;
    for (unsigned k = 0; k <= 3; ++k) polys.push_back(P.poly("z^" + std::to_string(k)));
    std::vector<ure_element> ops3;
    for (unsigned b = 0; b <= 1; ++b)
        for (const auto& w : P.U().admissible_monomials(3)) ops3.emplace_back(w, P.poly("z^" + std::to_string(b)));
    std::size_t adj_bad = 0, inv_bad = 0;
    for (const auto& f1 : polys)
        for (const auto& f2 : polys) {
            const jet_element phi{{{f1, f2}}};
            const auto table = J.canonical(phi);
            for (const auto& f : polys)
                for (const auto& p : ops3) {
                    if (!(J.pairing(P.mul(p, P.from_poly(f)), table) ==
                          J.pairing(p, J.hopf().product(J.j(f), table))))
                        ++adj_bad;
                }
            if (!(J.canonical(J.antipode(J.antipode(phi))) == table)) ++inv_bad;
            if (!(J.canonical(J.antipode(phi)) == J.hopf().antipode(table))) ++inv_bad;
        }
    o.notes.push_back("jet pairs " + std::to_string(polys.size() * polys.size()) + ", operators " +
                      std::to_string(ops3.size()));
    o.require(adj_bad == 0, "jet adjunction <pf, phi> = <p, j(f) phi>");
    o.require(inv_bad == 0, "jet antipode is an involution matching the Hopf antipode");
    return o;
}

lie_rinehart_pair heisenberg_plane()
{
    auto R = make_ring({{"z1", 0, 0, false}, {"z2", 0, 0, false}});
    return lie_rinehart_pair(heisenberg_graded(), R,
                             parse_anchor(R, {{"x", "d/dz1"}, {"y", "z1*d/dz2"}, {"z", "d/dz2"}}));
}

outcome projection_suite()
{
    outcome o;
    const auto E = heisenberg_plane();
    action_hc G(E, {"x", "y", "z"}, 2);
    action_hopf H(E, 2);
    groupoid_projection pr(G, H);
    auto [n, rank] = pr.surjectivity();
    o.require(rank == n, "surjective: rank " + std::to_string(rank) + " of " + std::to_string(n));
    std::size_t bad = 0;
    const auto basis = G.basis();
    for (const auto& [name, f] : basis) {
        const auto p = pr.project(f);
        if (!(p == pr.project_by_derivatives(f))) ++bad;
        if (!(pr.project(G.antipode(f)) == H.antipode(p))) ++bad;
        if (!(pr.project2(G.coproduct(f)) == H.coproduct(p))) ++bad;
        if (!(G.counit(f) == H.counit(p))) ++bad;
        for (const auto& [name2, g] : basis)
            if (!(pr.project(G.product(f, g)) == H.product(p, pr.project(g)))) ++bad;
    }
    for (const auto& f : sample_base(E)) {
        if (!(pr.project(G.eta_l(f)) == H.eta_l(f))) ++bad;
        if (!(pr.project(G.eta_r(f)) == H.eta_r(f))) ++bad;
    }
    o.require(bad == 0, "projection commutes with eta_L, eta_R, Delta, epsilon, S and the product");
    return o;
}

bool pbw_goldens_hold(const lie_algebra& g)
{
    enveloping_algebra U(g);
    return to_string(U, parse_u(U, "e*f")) == "f*e + 2*h" && to_string(U, parse_u(U, "f*h")) == "h*f + f" &&
           to_string(U, parse_u(U, "e*h")) == "h*e - e";
}

// Some suite must notice every single-constant corruption of sl2.
outcome mutation_suite()
{
    outcome o;
    const auto g = sl2_graded();
    // otherwise every mutant would be "caught" by the goldens
    o.require(check_jacobi(g).pass() && pbw_goldens_hold(g), "unmutated sl2 passes Jacobi and the PBW goldens");
    const auto brackets = g.stored_brackets();
    std::size_t mutants = 0, caught = 0;
    for (std::size_t b = 0; b < brackets.size(); ++b)
        for (std::size_t t = 0; t < brackets[b].terms.size(); ++t)
            for (const rational& factor : {rational(2), rational(-1), rational(0)}) {
                auto br = brackets;
                br[b].terms[t].second *= factor;
                lie_algebra m("sl2_mutant", g.basis(), br);
                ++mutants;
                std::string by;
                if (!check_jacobi(m).pass())
                    by = "jacobi";
                else if (!pbw_goldens_hold(m))
                    by = "pbw golden";
                else if (hc_pair P(m, {"h"}, 2); !run_axiom_suite(make_hc_dossier(P)).pass())
                    by = "harish-chandra";
                if (by.empty())
                    o.require(false, "mutant [" + br[b].left + "," + br[b].right + "] term " + br[b].terms[t].first +
                                         " x" + to_string(factor) + " not detected");
                else
                    ++caught;
            }
    o.notes.push_back(std::to_string(caught) + "/" + std::to_string(mutants) + " structure-constant mutants caught");

    // one antipode sign flipped on a single monomial
    auto U = std::make_shared<const enveloping_algebra>(g);
    const word target = {static_cast<int>(g.index_of("f")), static_cast<int>(g.index_of("e"))};  // admissible: f precedes e
    auto corrupt = [U, target](const u_element& a) {
        u_element out;
        for (const auto& [w, c] : a) {
            auto s = U->antipode(u_element(w, c));
            out += w == target ? rational(-1) * s : s;
        }
        return out;
    };
    auto rep = run_axiom_suite(make_u_dossier(U, 3, corrupt));
    const auto* s1 = rep.find("antipode identities");
    o.require(s1 && !s1->pass, "flipped antipode sign is detected");
    if (s1 && !s1->pass) o.notes.push_back("antipode mutant caught at " + s1->counterexample);
    return o;
}

std::pair<int, std::string> run_cli(const std::vector<std::string>& args)
{
    std::string cmd = "cd '" + golden_dir + "' && '" + cli_path + "'";
    for (const auto& a : args) {
        std::string q = "'";
        for (char c : a) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
        cmd += " " + q + "'";
    }
    cmd += " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

outcome determinism_suite()
{
    outcome o;
    if (cli_path.empty() || golden_dir.empty()) {
        o.require(false, "--cli and --golden are required for this criterion");
        return o;
    }
    // NAME.cmd: first line the expected exit status, then one argument per line.
    std::vector<fs::path> cases;
    for (const auto& e : fs::directory_iterator(golden_dir))
        if (e.path().extension() == ".cmd") cases.push_back(e.path());
    std::sort(cases.begin(), cases.end());
    o.require(!cases.empty(), "golden cases present");
    for (const auto& c : cases) {
        std::ifstream in(c);
        std::string line;
        std::getline(in, line);
        const int expect = std::stoi(line);
        std::vector<std::string> args;
        while (std::getline(in, line))
            if (!line.empty()) args.push_back(line);
        auto first = run_cli(args), second = run_cli(args);
        const auto name = c.stem().string();
        o.require(first == second, name + ": two runs differ");
        o.require(first.first == expect, name + ": exit " + std::to_string(first.first) + ", expected " +
                                             std::to_string(expect));
        o.require(first.second == slurp(fs::path(c).replace_extension(".out")), name + ": output differs from golden");
    }
    o.notes.push_back(std::to_string(cases.size()) + " golden cases");

    // print then parse on random normal forms
    std::mt19937 rng(11);
    std::size_t bad = 0, count = 0;
    for (const auto& g : {sl2_graded(), heisenberg_odd(1), gl({{0, 0, 1}, {1, 1, 1}})}) {
        enveloping_algebra U(g);
        const auto monos = U.admissible_monomials(3);
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 5), terms(1, 4);
        for (int k = 0; k < 34; ++k, ++count) {
            u_element a;
            for (int t = terms(rng); t > 0; --t) a.add(monos[pick(rng)], make_rational(num(rng), den(rng)));
            if (!(parse_u(U, to_string(U, a)) == a)) ++bad;
        }
    }
    const auto E = heisenberg_plane();
    const auto monos = E.U().admissible_monomials(2);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<int> num(-5, 5), e(0, 2);
    for (int k = 0; k < 30; ++k, ++count) {
        ure_element a;
        for (int t = 0; t < 3; ++t) {
            series c(E.base(), exact);
            c.add_term({static_cast<unsigned>(e(rng)), static_cast<unsigned>(e(rng))}, make_rational(num(rng), 3));
            c.add_term({0, 0}, rational(num(rng)));
            a.add(monos[pick(rng)], c);
        }
        if (!(parse_ure(E, E.to_string(a)) == a)) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " of " + std::to_string(count) + " print/parse round trips differ");
    o.notes.push_back(std::to_string(count) + " print/parse round trips");
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc)
            cli_path = fs::absolute(argv[++i]).string();
        else if (a == "--golden" && i + 1 < argc)
            golden_dir = fs::absolute(argv[++i]).string();
        else
            only.insert(std::stoi(a));
    }
    const std::vector<std::pair<std::string, outcome (*)()>> criteria{
        {"Jacobi suite", jacobi_suite},
        {"PBW rank", pbw_rank},
        {"psi coalgebra morphism", psi_coalgebra},
        {"Hopf suite for U(g)", hopf_suite},
        {"BCH", bch_suite},
        {"Harish-Chandra suite", hc_suite},
        {"algebroid suite", algebroid_suite},
        {"groupoid projection epimorphism", projection_suite},
        {"mutation sensitivity", mutation_suite},
        {"CLI determinism", determinism_suite},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (!only.empty() && !only.count(static_cast<int>(k + 1))) continue;
        const auto t0 = std::chrono::steady_clock::now();
        outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.pass;
        std::ostringstream t;
        t.setf(std::ios::fixed);
        t.precision(1);
        t << secs;
        std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << " ("
                  << t.str() << " s)\n";
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    }
    return all ? 0 : 1;
}
