#include <grhopf/hopf.hpp>
#include <grhopf/io.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace grhopf;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = fs::path(GRHOPF_SOURCE_DIR) / "data";

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name, const std::string& body)
{
    auto p = fs::temp_directory_path() / ("grhopf_test_" + name);
    std::ofstream(p) << body;
    return p;
}

}  // namespace

TEST(Json, CanonicalFilesRoundTripByteForByte)
{
    std::size_t seen = 0;
    for (const auto& e : fs::directory_iterator(data_dir)) {
        if (e.path().extension() != ".json") continue;
        auto j = read_json_file(e.path());
        if (!j.contains("basis") || e.path().stem() == "sl2_broken") continue;
        ++seen;
        EXPECT_EQ(dump(algebra_to_json(algebra_from_json(j))), slurp(e.path())) << e.path();
    }
    EXPECT_GE(seen, 3u);
}

TEST(Json, BuiltinsRoundTrip)
{
    for (const auto& name : builtin_names()) {
        auto g = builtin_algebra(name);
        auto back = algebra_from_json(ojson::parse(dump(algebra_to_json(g))));
        EXPECT_EQ(back, g) << name;
    }
    EXPECT_THROW(builtin_algebra("sl3"), input_error);
}

TEST(Json, AcceptsIntegerAndFractionCoefficients)
{
    auto j = ojson::parse(R"({"name": "t", "basis": [{"label": "a", "degree": 1, "parity": 0},
        {"label": "b", "degree": -1, "parity": 0}, {"label": "c", "degree": 0, "parity": 0}],
        "brackets": [{"left": "a", "right": "b", "terms": [{"basis": "c", "coeff": 2}]},
                     {"left": "c", "right": "a", "terms": [{"basis": "a", "coeff": "1/2"}]},
                     {"left": "c", "right": "b", "terms": [{"basis": "b", "coeff": "-1/2"}]}]})");
    auto g = algebra_from_json(j);
    EXPECT_EQ(g.structure(g.index_of("a"), g.index_of("b")), lie_vector(g.index_of("c"), rational(2)));
    EXPECT_EQ(g.structure(g.index_of("a"), g.index_of("c")), lie_vector(g.index_of("a"), make_rational(-1, 2)));
    EXPECT_TRUE(check_jacobi(g).pass());
}

TEST(Json, MalformedInput)
{
    EXPECT_THROW(algebra_from_json(ojson::parse(R"({"basis": []})")), input_error);
    EXPECT_THROW(algebra_from_json(ojson::parse(R"({"name": "x", "basis": [{"label": "a", "degree": "1", "parity": 0}]})")),
                 input_error);
    EXPECT_THROW(algebra_from_json(ojson::parse(
                     R"({"name": "x", "basis": [{"label": "a", "degree": 0, "parity": 0}],
                         "brackets": [{"left": "a", "right": "q", "terms": []}]})")),
                 input_error);
    EXPECT_THROW(read_json_file(scratch("bad.json", "{ not json")), input_error);
    EXPECT_THROW(load_algebra((data_dir / "missing.json").string()), input_error);
}

TEST(Json, PairFiles)
{
    auto p = load_pair(data_dir / "heisenberg_center.pair.json");
    EXPECT_EQ(p.g.name(), "heisenberg_graded");
    EXPECT_EQ(p.h, std::vector<std::string>{"z"});
    ASSERT_TRUE(p.order.has_value());
    EXPECT_EQ(*p.order, 3u);
    EXPECT_FALSE(load_pair(data_dir / "heisenberg_odd.pair.json").order.has_value());
}

TEST(Json, ActionFiles)
{
    auto w = load_action(data_dir / "weyl.action.json");
    EXPECT_EQ(w.pair.g().name(), "line");
    EXPECT_FALSE(w.has_h);
    auto s = load_action(data_dir / "sl2_line.action.json");
    EXPECT_TRUE(s.has_h);
    EXPECT_EQ(s.h, (std::vector<std::string>{"e", "h"}));
    EXPECT_THROW(load_action(data_dir / "heisenberg_line.action.json"), input_error);
    EXPECT_THROW(load_action(scratch("nobase.json", R"({"algebra": "builtin:sl2", "anchor": []})")), input_error);
    EXPECT_THROW(load_action(scratch("badanchor.json",
                                     R"({"algebra": "builtin:sl2", "base": ["z"], "anchor": ["q: d/dz"]})")),
                 input_error);
}

TEST(Verify, ReportsFirstCounterexample)
{
    auto U = std::make_shared<const enveloping_algebra>(builtin::sl2_graded());
    auto d = make_u_dossier(U, 2);
    // a counit that forgets the scalar part
    d.counit = [](const u_element&) { return rational(0); };
    auto rep = run_axiom_suite(d);
    EXPECT_FALSE(rep.pass());
    const auto* c = rep.find("counit of units");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->pass);
    EXPECT_FALSE(c->counterexample.empty());
    auto j = rep.to_json();
    EXPECT_EQ(j["pass"], false);
    EXPECT_NE(rep.to_text().find("FAIL"), std::string::npos);
}

TEST(Verify, MissingStructureMapIsAnError)
{
    auto d = make_u_dossier(builtin::sl2_graded(), 1);
    d.antipode = nullptr;
    EXPECT_THROW(run_axiom_suite(d), input_error);
}

TEST(Verify, NonAssociativeProductCaught)
{
    auto U = std::make_shared<const enveloping_algebra>(builtin::heisenberg_graded());
    auto d = make_u_dossier(U, 2);
    const enveloping_algebra* u = U.get();
    // a b + [a, b] / 2 in degree 1 breaks associativity
    d.mul = [u](const u_element& a, const u_element& b) {
        auto p = u->mul(a, b);
        if (a.size() == 1 && b.size() == 1 && a.begin()->first.size() == 1 && b.begin()->first.size() == 1)
            p.add(u->commutator(a, b), make_rational(1, 2));
        return p;
    };
    auto rep = run_axiom_suite(d);
    const auto* r = rep.find("associativity");
    ASSERT_NE(r, nullptr);
    EXPECT_FALSE(r->pass);
}
