#include <grhopf/bch.hpp>
#include <grhopf/expr.hpp>

#include <gtest/gtest.h>

using namespace grhopf;
using namespace grhopf::builtin;

namespace {

rational coeff(const lie_series& s, const free_word& w)
{
    auto c = s.find(w);
    return c ? *c : rational(0);
}

}  // namespace

TEST(Bch, DynkinMatchesAssociativeOracle)
{
    for (unsigned N = 1; N <= 6; ++N) EXPECT_EQ(expand(dynkin_series(N)), bch_oracle(N)) << "order " << N;
}

TEST(Bch, KnownCoefficients)
{
    const auto s = reduce_free_lie(dynkin_series(4));
    EXPECT_EQ(coeff(s, {0}), rational(1));
    EXPECT_EQ(coeff(s, {1}), rational(1));
    EXPECT_EQ(coeff(s, {0, 1}), make_rational(1, 2));
    EXPECT_EQ(coeff(s, {0, 0, 1}), make_rational(1, 12));
    EXPECT_EQ(coeff(s, {1, 0, 1}), make_rational(-1, 12));
    EXPECT_EQ(coeff(s, {0, 1, 0, 1}), make_rational(-1, 24));
    EXPECT_EQ(to_string(s), "u + v + 1/2*[u,v] + 1/12*[u,[u,v]] - 1/12*[v,[u,v]] - 1/24*[u,[v,[u,v]]]");
}

TEST(Bch, OracleLowOrders)
{
    const auto o = bch_oracle(3);
    auto c = [&](const free_word& w) {
        auto p = o.find(w);
        return p ? *p : rational(0);
    };
    EXPECT_EQ(c({0, 1}), make_rational(1, 2));
    EXPECT_EQ(c({1, 0}), make_rational(-1, 2));
    EXPECT_EQ(c({0, 0}), rational(0));
    EXPECT_EQ(c({0, 1, 0}), make_rational(-1, 6));
    EXPECT_EQ(c({1, 0, 0}), make_rational(1, 12));
    EXPECT_THROW(bch_oracle(9), input_error);
}

TEST(Bch, HeisenbergClosedForm)
{
    const auto h = heisenberg_graded();
    for (auto [a, b] : {std::pair{make_rational(3, 2), make_rational(-2, 5)}, std::pair{rational(1), rational(1)}}) {
        lie_vector x(h.index_of("x"), a), y(h.index_of("y"), b);
        lie_vector closed = x + y;
        closed.add(h.index_of("z"), rational(a * b / 2));
        for (unsigned N = 2; N <= 7; ++N) EXPECT_EQ(dynkin_bch(h, x, y, N), closed);
    }
}

TEST(Bch, CommutingArgumentsAdd)
{
    const auto g = sl2_graded();
    lie_vector x(g.index_of("e"), rational(2)), y(g.index_of("e"), make_rational(-1, 3));
    EXPECT_EQ(dynkin_bch(g, x, y, 5), x + y);
}

TEST(Bch, Antisymmetry)
{
    // Z(-Y, -X) = -Z(X, Y)
    const auto g = sl2_graded();
    lie_vector x = g.generator("e") + rational(2) * g.generator("h"), y = g.generator("f");
    const rational m1(-1);
    EXPECT_EQ(dynkin_bch(g, m1 * y, m1 * x, 5), m1 * dynkin_bch(g, x, y, 5));
}

TEST(Bch, GroupLawAssociative)
{
    for (const auto& g : {sl2_graded(), heisenberg_graded(), heisenberg_odd(1)}) {
        for (const auto& r : group_law_associativity_residual(g, 4)) EXPECT_TRUE(r.is_zero()) << g.name();
    }
}

TEST(Bch, GroupLawUnit)
{
    const auto g = sl2_graded();
    auto law = formal_group_coproduct(g, 3);
    const std::size_t n = g.dim();
    // Z(u, 0) = u
    std::vector<series> img;
    for (std::size_t a = 0; a < n; ++a) img.push_back(series::var(law.ring, {3, unbounded}, a));
    for (std::size_t a = 0; a < n; ++a) img.push_back(series(law.ring, {3, unbounded}));
    for (std::size_t a = 0; a < n; ++a)
        EXPECT_EQ(law.component[a].substitute(img, law.ring, {3, unbounded}), img[a]);
}

TEST(Bch, ExponentialDualTable)
{
    for (const auto& g : {sl2_graded(), heisenberg_odd(1), gl({{0, 0, 1}, {1, 1, 1}})})
        EXPECT_TRUE(exp_dual_mismatches(g, 3).empty()) << g.name();
}

TEST(Bch, SeriesCoefficientsOnFreeCoordinates)
{
    // Z^z(u, v) for Heisenberg: u_z + v_z + (u_x v_y - u_y v_x)/2
    auto law = formal_group_coproduct(heisenberg_graded(), 3);
    EXPECT_EQ(law.component[law.g.index_of("z")].to_string(), "-1/2*u_y*v_x + 1/2*u_x*v_y + u_z + v_z");
}
