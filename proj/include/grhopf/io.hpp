// JSON for algebras, Harish-Chandra pairs and actions; builtin algebras by name.
#ifndef GRHOPF_IO_HPP
#define GRHOPF_IO_HPP

#include "algebroid.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace grhopf {

using ojson = nlohmann::ordered_json;

// Canonical form: basis in basis order, brackets [x_i, x_j] for i <= j, terms in
// basis order, coefficients as "p/q" strings. Writing a loaded canonical file
// reproduces it byte for byte.
inline ojson algebra_to_json(const lie_algebra& g)
{
    ojson j;
    j["name"] = g.name();
    auto& basis = j["basis"] = ojson::array();
    for (const auto& e : g.basis()) basis.push_back({{"label", e.label}, {"degree", e.degree}, {"parity", e.parity}});
    auto& br = j["brackets"] = ojson::array();
    for (const auto& b : g.stored_brackets()) {
        ojson terms = ojson::array();
        for (const auto& [l, c] : b.terms) terms.push_back({{"basis", l}, {"coeff", to_string(c)}});
        br.push_back({{"left", b.left}, {"right", b.right}, {"terms", terms}});
    }
    return j;
}

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

namespace detail {
inline const ojson& field(const ojson& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw input_error(where + ": missing field '" + key + "'");
    return j.at(key);
}
inline std::string string_field(const ojson& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_string()) throw input_error(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}
inline int int_field(const ojson& j, const char* key, const std::string& where)
{
    const auto& v = field(j, key, where);
    if (!v.is_number_integer()) throw input_error(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}
inline rational coefficient(const ojson& v, const std::string& where)
{
    if (v.is_number_integer()) return rational(v.get<long>());
    if (!v.is_string()) throw input_error(where + ": coefficient must be a \"p/q\" string");
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
        throw input_error(where + ": bad coefficient '" + v.get<std::string>() + "'");
    }
}
}  // namespace detail

inline lie_algebra algebra_from_json(const ojson& j)
{
    if (!j.is_object()) throw input_error("algebra: expected a JSON object");
    const std::string name = detail::string_field(j, "name", "algebra");
    std::vector<basis_element> basis;
    const auto& b = detail::field(j, "basis", "algebra");
    if (!b.is_array()) throw input_error("algebra: 'basis' must be an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
        const std::string where = "algebra basis[" + std::to_string(i) + "]";
        basis.push_back({detail::string_field(b[i], "label", where), detail::int_field(b[i], "degree", where),
                         detail::int_field(b[i], "parity", where)});
    }
    std::vector<bracket_entry> brackets;
    if (j.contains("brackets")) {
        const auto& br = j.at("brackets");
        if (!br.is_array()) throw input_error("algebra: 'brackets' must be an array");
        for (std::size_t i = 0; i < br.size(); ++i) {
            const std::string where = "algebra brackets[" + std::to_string(i) + "]";
            bracket_entry e{detail::string_field(br[i], "left", where), detail::string_field(br[i], "right", where), {}};
            const auto& terms = detail::field(br[i], "terms", where);
            if (!terms.is_array()) throw input_error(where + ": 'terms' must be an array");
            for (const auto& t : terms)
                e.terms.emplace_back(detail::string_field(t, "basis", where),
                                     detail::coefficient(detail::field(t, "coeff", where), where));
            brackets.push_back(std::move(e));
        }
    }
    return lie_algebra(name, std::move(basis), brackets);
}

inline std::vector<std::string> builtin_names()
{
    return {"sl2_graded", "heisenberg_graded", "heisenberg_odd", "shift_tangent(sl2_graded)", "pi_tangent(sl2_graded)",
            "gl(0:0:1,1:1:1)"};
}

inline lie_algebra builtin_algebra(const std::string& name)
{
    using namespace builtin;
    if (name == "sl2_graded" || name == "sl2") return sl2_graded();
    if (name == "heisenberg_graded" || name == "heisenberg") return heisenberg_graded();
    if (name == "heisenberg_odd") return heisenberg_odd(1);
    if (name == "shift_tangent(sl2_graded)" || name == "shift_tangent_sl2") return shift_tangent(sl2_graded());
    if (name == "pi_tangent(sl2_graded)" || name == "pi_tangent_sl2") return pi_tangent(sl2_graded());
    if (name == "gl(0:0:1,1:1:1)" || name == "gl_1_1") return gl({{0, 0, 1}, {1, 1, 1}});
    auto names = builtin_names();
    auto c = closest(name, names);
    throw input_error("unknown builtin algebra '" + name + "'" + (c.empty() ? "" : " (did you mean '" + c + "'?)"));
}

inline ojson read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path.string() + "'");
    try {
        return ojson::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

// "builtin:NAME" or a path to an algebra file.
inline lie_algebra load_algebra(const std::string& ref, const std::filesystem::path& relative_to = {})
{
    if (ref.rfind("builtin:", 0) == 0) return builtin_algebra(ref.substr(8));
    std::filesystem::path p(ref);
    if (p.is_relative() && !relative_to.empty()) p = relative_to / p;
    try {
        return algebra_from_json(read_json_file(p));
    } catch (const input_error& e) {
        throw input_error(p.string() + ": " + e.what());
    }
}

// The algebra of a pair or action file: a reference string or an inline object.
inline lie_algebra algebra_field(const ojson& j, const std::filesystem::path& dir, const std::string& where)
{
    const auto& a = detail::field(j, "algebra", where);
    if (a.is_string()) return load_algebra(a.get<std::string>(), dir);
    if (a.is_object()) return algebra_from_json(a);
    throw input_error(where + ": 'algebra' must be a file name, builtin:NAME or an object");
}

inline std::vector<std::string> string_list(const ojson& j, const char* key, const std::string& where)
{
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    const auto& a = j.at(key);
    if (!a.is_array()) throw input_error(where + ": '" + key + "' must be an array of strings");
    for (const auto& x : a) {
        if (!x.is_string()) throw input_error(where + ": '" + key + "' must be an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

struct pair_spec {
    lie_algebra g;
    std::vector<std::string> h;
    std::optional<unsigned> order;
};

// {"algebra": ..., "h": [labels], "order": N (optional)}
inline pair_spec load_pair(const std::filesystem::path& path)
{
    const ojson j = read_json_file(path);
    const std::string where = path.string();
    pair_spec s{algebra_field(j, path.parent_path(), where), string_list(j, "h", where), std::nullopt};
    if (j.contains("order")) {
        if (!j.at("order").is_number_unsigned()) throw input_error(where + ": 'order' must be a non-negative integer");
        s.order = j.at("order").get<unsigned>();
    }
    return s;
}

struct action_spec {
    lie_rinehart_pair pair;
    std::vector<std::string> h;
    std::map<std::string, vector_field> h_flow;
    bool has_h = false;
};

namespace detail {
// ["x: d/dz", ...] or {"x": "d/dz", ...}
inline std::vector<std::pair<std::string, std::string>> anchor_items(const ojson& a, const std::string& where)
{
    std::vector<std::pair<std::string, std::string>> items;
    if (a.is_object()) {
        for (const auto& [k, v] : a.items()) {
            if (!v.is_string()) throw input_error(where + ": anchor of '" + k + "' must be a string");
            items.emplace_back(k, v.get<std::string>());
        }
    } else if (a.is_array()) {
        for (const auto& x : a) {
            if (!x.is_string()) throw input_error(where + ": anchor entries must be strings \"x: field\"");
            auto s = x.get<std::string>();
            auto colon = s.find(':');
            if (colon == std::string::npos) throw input_error(where + ": anchor entry '" + s + "' has no ':'");
            auto trim = [](std::string t) {
                auto b = t.find_first_not_of(" \t");
                auto e = t.find_last_not_of(" \t");
                return b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
            };
            items.emplace_back(trim(s.substr(0, colon)), trim(s.substr(colon + 1)));
        }
    } else {
        throw input_error(where + ": 'anchor' must be an array or an object");
    }
    return items;
}
}  // namespace detail

// {"algebra": ..., "base": ["z", ...], "anchor": [...] | {...}, "h": [...], "h_flow": {...}}
inline action_spec action_from_json(const ojson& j, const std::filesystem::path& dir, const std::string& where)
{
    lie_algebra g = algebra_field(j, dir, where);
    std::vector<variable> vars;
    for (const auto& name : string_list(j, "base", where)) vars.push_back({name, 0, 0, false});
    if (vars.empty()) throw input_error(where + ": 'base' lists no variables");
    auto ring = make_ring(vars);
    auto anchor = parse_anchor(ring, detail::anchor_items(detail::field(j, "anchor", where), where));
    for (const auto& [label, X] : anchor)
        if (!g.find(label)) throw input_error(where + ": anchor given for unknown generator '" + label + "'" + g.suggestion(label));
    action_spec s{lie_rinehart_pair(g, ring, anchor), string_list(j, "h", where), {}, j.contains("h")};
    if (j.contains("h_flow")) s.h_flow = parse_anchor(ring, detail::anchor_items(j.at("h_flow"), where));
    return s;
}

inline action_spec load_action(const std::filesystem::path& path)
{
    const ojson j = read_json_file(path);
    return action_from_json(j, path.parent_path(), path.string());
}

}  // namespace grhopf

#endif
