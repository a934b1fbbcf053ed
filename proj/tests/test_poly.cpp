#include <grhopf/expr.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace grhopf;

namespace {

const truncation free_t{unbounded, unbounded};

series random_series(const ring_ptr& R, truncation t, std::mt19937& rng, unsigned max_exp)
{
    std::uniform_int_distribution<unsigned> ex(0, max_exp);
    std::uniform_int_distribution<int> num(-4, 4);
    series s(R, t);
    for (int k = 0; k < 4; ++k) {
        exponents e(R->size());
        for (auto& x : e) x = ex(rng);
        s.add_term(e, make_rational(num(rng), 2));
    }
    return s;
}

}  // namespace

TEST(Series, ParsePrintRoundTrip)
{
    auto R = make_ring({{"z", 0, 0, false}, {"w", 1, 0, false}});
    auto s = parse_series(R, free_t, "3/2*z^2*w - z + 7");
    EXPECT_EQ(s.to_string(), "3/2*z^2*w - z + 7");
    EXPECT_EQ(parse_series(R, free_t, s.to_string()), s);
    EXPECT_EQ(parse_series(R, free_t, "(z+1)^2"), parse_series(R, free_t, "z^2 + 2*z + 1"));
    EXPECT_THROW(parse_series(R, free_t, "q"), input_error);
}

TEST(Series, OddVariablesAnticommute)
{
    auto R = make_ring({{"a", 0, 1, true}, {"b", 0, 1, true}});
    auto a = series::var(R, free_t, "a"), b = series::var(R, free_t, "b");
    EXPECT_EQ(a * b, -(b * a));
    EXPECT_TRUE((a * a).is_zero());
    // left derivative: d/db (a b) = -a
    EXPECT_EQ((a * b).derivative(1), -a);
}

TEST(Series, RingAxiomsOnRandomElements)
{
    auto R = make_ring({{"x", 0, 0, true}, {"t", 1, 1, true}, {"y", -1, 0, true}});
    const truncation t{4, unbounded};
    std::mt19937 rng(3);
    for (int k = 0; k < 30; ++k) {
        auto a = random_series(R, t, rng, 2), b = random_series(R, t, rng, 2), c = random_series(R, t, rng, 2);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        // graded commutativity on homogeneous parts
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                auto ap = a.parity_part(p), bq = b.parity_part(q);
                EXPECT_EQ(ap * bq, rational((p & q) ? -1 : 1) * (bq * ap));
            }
    }
}

TEST(Series, DerivativeIsASuperDerivation)
{
    auto R = make_ring({{"x", 0, 0, false}, {"t", 0, 1, false}, {"s", 0, 1, false}});
    std::mt19937 rng(5);
    for (int k = 0; k < 30; ++k) {
        auto a = random_series(R, free_t, rng, 2), b = random_series(R, free_t, rng, 2);
        for (std::size_t i = 0; i < R->size(); ++i) {
            const int pi = R->var(i).parity;
            for (int p = 0; p < 2; ++p) {
                auto ap = a.parity_part(p);
                auto lhs = (ap * b).derivative(i);
                auto rhs = ap.derivative(i) * b + rational((pi & p) ? -1 : 1) * (ap * b.derivative(i));
                EXPECT_EQ(lhs, rhs);
            }
        }
    }
}

TEST(Series, Truncation)
{
    auto R = make_ring({{"u", 1, 0, true}, {"v", -2, 0, true}});
    auto u = series::var(R, {2, unbounded}, "u");
    EXPECT_TRUE((u * u * u).is_zero());
    EXPECT_FALSE((u * u).is_zero());
    // weighted degree sum e_i |deg_i|
    auto v = series::var(R, {unbounded, 3}, "v"), w = series::var(R, {unbounded, 3}, "u");
    EXPECT_TRUE((v * v).is_zero());
    EXPECT_FALSE((v * w).is_zero());
    // equality ignores truncation
    EXPECT_EQ(series::var(R, {5, unbounded}, "u"), series::var(R, free_t, "u"));
}

TEST(Series, Substitute)
{
    auto R = make_ring({{"x", 0, 0, true}, {"y", 0, 0, true}});
    const truncation t{3, unbounded};
    auto x = series::var(R, t, "x"), y = series::var(R, t, "y");
    auto f = x * x + y;
    // x -> x + y, y -> x y
    auto g = f.substitute({x + y, x * y}, R, t);
    EXPECT_EQ(g, x * x + rational(2) * x * y + y * y + x * y);
    EXPECT_THROW(f.substitute({x}, R, t), input_error);
    auto one = series::constant(R, t, rational(1));
    EXPECT_THROW(f.substitute({x + one, y}, R, t), input_error);
}

TEST(Filtration, IdealSide)
{
    // one negative variable of degree -1 and one of degree -2, one positive
    auto R = make_ring({{"a", -1, 0, true}, {"b", -2, 0, true}, {"c", 1, 0, true}});
    auto a = series::var(R, free_t, "a"), b = series::var(R, free_t, "b"), c = series::var(R, free_t, "c");
    EXPECT_TRUE(filtration_member(c, 0));
    EXPECT_FALSE(filtration_member(c, 1));
    EXPECT_TRUE(filtration_member(a * c, 1));
    EXPECT_TRUE(filtration_member(b, 2));
    EXPECT_FALSE(filtration_member(a, 2));
    EXPECT_TRUE(filtration_member(a * a, 2));
    EXPECT_EQ(truncate(a + c + a * b, 2), a + c);
}

TEST(Filtration, IdealIsMultiplicative)
{
    auto R = make_ring({{"a", -1, 0, true}, {"b", -2, 0, true}, {"c", 1, 0, true}});
    std::mt19937 rng(9);
    for (int k = 0; k < 40; ++k) {
        auto x = random_series(R, free_t, rng, 2), y = random_series(R, free_t, rng, 2);
        for (unsigned p = 0; p <= 3; ++p)
            for (unsigned q = 0; q <= 3; ++q)
                if (filtration_member(x, p) && filtration_member(y, q)) EXPECT_TRUE(filtration_member(x * y, p + q));
    }
}
