// The Weyl algebra as the enveloping algebroid of d/dz on the line, and its jets.
#include <grhopf/algebroid.hpp>

#include <iostream>

using namespace grhopf;

int main()
{
    auto R = make_ring({{"z", 0, 0, false}});
    lie_rinehart_pair W(builtin::abelian({{"x", 0, 0}}, "line"), R, parse_anchor(R, {{"x", "d/dz"}}));

    for (const char* e : {"x*z", "x*z^2", "x*z - z*x", "(x + z)^3"})
        std::cout << e << " = " << W.to_string(parse_ure(W, e)) << "\n";
    std::cout << "Delta(x*z) = " << W.to_string(W.coproduct(parse_ure(W, "x*z"))) << "\n";

    action_hopf H(W, 3);
    auto f = W.poly("z^2");
    std::cout << "eta_R(z^2) = " << H.show(H.eta_r(f)) << "\n";
    std::cout << "S(eta_L(z^2)) = " << H.show(H.antipode(H.eta_l(f))) << "\n";
    std::cout << run_axiom_suite(make_action_dossier(H)).to_text();
}
