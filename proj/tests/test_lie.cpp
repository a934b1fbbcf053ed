#include <grhopf/expr.hpp>

#include <gtest/gtest.h>

using namespace grhopf;
using namespace grhopf::builtin;

namespace {

std::vector<lie_algebra> all_builtins()
{
    return {sl2_graded(),
            heisenberg_graded(),
            heisenberg_odd(),
            heisenberg_odd(make_rational(3, 2)),
            shift_tangent(sl2_graded()),
            pi_tangent(sl2_graded()),
            shift_tangent(heisenberg_graded()),
            gl({{0, 0, 1}, {1, 1, 1}}),
            gl({{0, 0, 2}}),
            gl({{0, 0, 1}, {1, 0, 1}, {-1, 1, 1}})};
}

}  // namespace

TEST(Lie, Sl2Table)
{
    const auto g = sl2_graded();
    auto e = g.index_of("e"), f = g.index_of("f"), h = g.index_of("h");
    EXPECT_EQ(g.structure(h, e), lie_vector(e, rational(1)));
    EXPECT_EQ(g.structure(h, f), lie_vector(f, rational(-1)));
    EXPECT_EQ(g.structure(e, f), lie_vector(h, rational(2)));
    EXPECT_EQ(g.structure(f, e), lie_vector(h, rational(-2)));
    EXPECT_TRUE(g.structure(h, h).empty());
}

TEST(Lie, BuiltinsSatisfyJacobi)
{
    for (const auto& g : all_builtins()) EXPECT_TRUE(check_jacobi(g).pass()) << g.name();
}

TEST(Lie, SuperAntisymmetry)
{
    for (const auto& g : all_builtins())
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j) {
                const rational s = (g.parity(i) & g.parity(j)) ? 1 : -1;
                EXPECT_EQ(g.structure(j, i), s * g.structure(i, j)) << g.name();
            }
}

TEST(Lie, GradingIsADerivation)
{
    for (const auto& g : all_builtins()) {
        euler_derivation E{&g};
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = 0; j < g.dim(); ++j) EXPECT_TRUE(E.residual(i, j).empty()) << g.name();
    }
}

TEST(Lie, JacobiCatchesBrokenSl2)
{
    lie_algebra bad("bad", {{"e", 1, 0}, {"f", -1, 0}, {"h", 0, 0}},
                    {{"h", "e", {{"e", 2}}}, {"h", "f", {{"f", -1}}}, {"e", "f", {{"h", 2}}}});
    auto rep = check_jacobi(bad);
    EXPECT_FALSE(rep.pass());
    EXPECT_EQ(rep.violations.size(), 6u);
}

TEST(Lie, OddSelfBracket)
{
    const auto g = heisenberg_odd(1);
    auto t = g.index_of("theta");
    EXPECT_EQ(g.structure(t, t), lie_vector(g.index_of("z"), rational(1)));
}

TEST(Lie, GlSuperBracket)
{
    // gl(1|1): [E12, E21] = E11 + E22 since both are odd
    const auto g = gl({{0, 0, 1}, {1, 1, 1}});
    lie_vector expect(g.index_of("E11"), rational(1));
    expect.add(g.index_of("E22"), rational(1));
    EXPECT_EQ(g.structure(g.index_of("E12"), g.index_of("E21")), expect);
    EXPECT_EQ(g.parity(g.index_of("E12")), 1);
    EXPECT_EQ(g.degree(g.index_of("E12")), -1);
}

TEST(Lie, ConstructionErrors)
{
    EXPECT_THROW(lie_algebra("d", {{"x", 0, 0}, {"x", 1, 0}}, {}), input_error);
    EXPECT_THROW(lie_algebra("p", {{"x", 0, 2}}, {}), input_error);
    EXPECT_THROW(lie_algebra("deg", {{"x", 1, 0}, {"y", 1, 0}}, {{"x", "y", {{"x", 1}}}}), input_error);
    EXPECT_THROW(lie_algebra("self", {{"x", 0, 0}}, {{"x", "x", {{"x", 1}}}}), input_error);
    EXPECT_THROW(lie_algebra("twice", {{"x", 0, 0}, {"y", 0, 0}}, {{"x", "y", {{"x", 1}}}, {"y", "x", {{"x", -1}}}}),
                 input_error);
    try {
        sl2_graded().index_of("hh");
        FAIL();
    } catch (const input_error& e) {
        EXPECT_NE(std::string(e.what()).find("did you mean 'h'"), std::string::npos);
    }
}

TEST(Lie, Subalgebra)
{
    const auto g = sl2_graded();
    auto b = subalgebra(g, {"h", "e"});
    EXPECT_EQ(b.dim(), 2u);
    EXPECT_TRUE(check_jacobi(b).pass());
    EXPECT_THROW(subalgebra(g, {"e", "f"}), input_error);
}

TEST(Lie, TangentConstructions)
{
    const auto t = shift_tangent(sl2_graded());
    EXPECT_EQ(t.dim(), 6u);
    EXPECT_EQ(t.degree(t.index_of("e_bar")), 0);
    EXPECT_EQ(t.structure(t.index_of("h"), t.index_of("e_bar")), lie_vector(t.index_of("e_bar"), rational(1)));
    EXPECT_TRUE(t.structure(t.index_of("e_bar"), t.index_of("f_bar")).empty());
    const auto p = pi_tangent(sl2_graded());
    EXPECT_EQ(p.parity(p.index_of("e_pi")), 1);
    EXPECT_THROW(pi_tangent(heisenberg_odd()), input_error);
}

TEST(Lie, ReorderingKeepsStructure)
{
    const auto g = sl2_graded();
    EXPECT_TRUE(g.same_structure(g.with_order(basis_order{{"e"}})));
    EXPECT_EQ(g.with_order(basis_order{{"e"}}).element(0).label, "e");
}

TEST(Lie, BracketWithCoefficients)
{
    const auto g = heisenberg_graded();
    lie_vector x(g.index_of("x"), make_rational(2, 3)), y(g.index_of("y"), rational(-3));
    EXPECT_EQ(bracket(g, x, y), lie_vector(g.index_of("z"), rational(-2)));
}
