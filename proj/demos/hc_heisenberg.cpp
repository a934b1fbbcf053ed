// Semi-formal integration of the Heisenberg algebra along its center.
#include <grhopf/hc.hpp>

#include <iostream>

using namespace grhopf;

int main()
{
    hc_pair P(builtin::heisenberg_graded(), {"z"}, 3);
    std::cout << "Z^z(w1, w2) = " << P.law().component[0].to_string() << "\n";
    auto basis = P.basis(2);
    for (const auto& [name, f] : basis) std::cout << "S(" << name << ") = " << P.show(P.antipode(f)) << "\n";
    std::cout << run_axiom_suite(make_hc_dossier(P)).to_text();
}
