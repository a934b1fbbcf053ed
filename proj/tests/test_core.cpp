#include <grhopf/core.hpp>

#include <gtest/gtest.h>

using namespace grhopf;

TEST(Rational, ParsePrint)
{
    EXPECT_EQ(parse_rational("-6/4"), make_rational(-3, 2));
    EXPECT_EQ(to_string(make_rational(-3, 2)), "-3/2");
    EXPECT_EQ(to_string(rational(5)), "5");
    EXPECT_THROW(parse_rational("1/0"), input_error);
    EXPECT_THROW(parse_rational("abc"), input_error);
    EXPECT_THROW(make_rational(1, 0), input_error);
}

TEST(Rational, Factorial)
{
    EXPECT_EQ(factorial(0), rational(1));
    EXPECT_EQ(factorial(6), rational(720));
}

TEST(Koszul, Signs)
{
    // swapping two odd items
    EXPECT_EQ(koszul_sign({1, 0}, {1, 1}), -1);
    EXPECT_EQ(koszul_sign({1, 0}, {1, 0}), 1);
    // a 3-cycle of odd items is even
    EXPECT_EQ(koszul_sign({1, 2, 0}, {1, 1, 1}), 1);
    EXPECT_EQ(koszul_sign({2, 1, 0}, {1, 1, 1}), -1);
    EXPECT_THROW(koszul_sign({0, 0}, {0, 0}), input_error);
}

TEST(Koszul, MultiplicativeUnderComposition)
{
    // sign(p o q) = sign(p) sign(q) when parities travel with the items
    const std::vector<int> par{1, 0, 1, 1};
    std::vector<std::size_t> p{2, 0, 3, 1}, q{1, 3, 0, 2};
    std::vector<std::size_t> pq(4);
    for (std::size_t i = 0; i < 4; ++i) pq[i] = p[q[i]];
    std::vector<int> par_p(4);
    for (std::size_t i = 0; i < 4; ++i) par_p[i] = par[p[i]];
    EXPECT_EQ(koszul_sign(pq, par), koszul_sign(p, par) * koszul_sign(q, par_p));
}

TEST(Lincomb, DropsZeros)
{
    using L = lincomb<int, rational>;
    L a(1, rational(2));
    a.add(2, rational(0));
    EXPECT_EQ(a.size(), 1u);
    a.add(1, rational(-2));
    EXPECT_TRUE(a.empty());
    L b(3, rational(1));
    EXPECT_TRUE((b - b).empty());
    EXPECT_TRUE((rational(0) * b).empty());
    EXPECT_EQ(-(-b), b);
}

TEST(Rank, OverQ)
{
    EXPECT_EQ(rank({{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank({{make_rational(1, 3), 1}, {1, 3}, {0, 1}}), 2u);
    EXPECT_EQ(rank({}), 0u);
}

TEST(Order, DegreeZeroFirstThenAscending)
{
    basis_element h{"h", 0, 0}, e{"e", 1, 0}, f{"f", -1, 0};
    EXPECT_TRUE(compare(h, f) < 0);
    EXPECT_TRUE(compare(f, e) < 0);
    basis_order lead{{"e"}};
    EXPECT_TRUE(compare(e, h, lead) < 0);
}

TEST(Closest, Suggestion)
{
    EXPECT_EQ(closest("hh", {"e", "h", "f"}), "h");
    EXPECT_EQ(closest("x", {}), "");
}
