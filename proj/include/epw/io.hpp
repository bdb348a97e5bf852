#pragma once

#include "epw/hilbert_square.hpp"
#include "epw/lattice.hpp"
#include "epw/poly.hpp"
#include "epw/wedge.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace epw::io {

using json = nlohmann::ordered_json;

/** Malformed input; the message names the offending field. */
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what)
{
    throw SchemaError(where + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing field '") + key + "'");
    return *it;
}

inline const json& array(const json& j, const std::string& where, std::size_t expected = SIZE_MAX)
{
    if (!j.is_array())
        fail(where, "expected an array");
    if (expected != SIZE_MAX && j.size() != expected)
        fail(where, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
    return j;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalars: rationals travel as "p" or "p/q" strings, integers as JSON integers or strings

inline json to_json(const Rational& r) { return r.get_str(); }

inline Rational rational_from_json(const json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.dump());
    if (!j.is_string())
        detail::fail(where, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        detail::fail(where, e.what());
    }
}

inline json to_json(const Integer& n)
{
    if (n.fits_slong_p())
        return n.get_si();
    return n.get_str();
}

inline Integer integer_from_json(const json& j, const std::string& where)
{
    Rational r = rational_from_json(j, where);
    if (r.get_den() != 1)
        detail::fail(where, "expected an integer");
    return r.get_num();
}

// ---------------------------------------------------------------------------
// Vectors and matrices

template <typename T>
json vector_json(const std::vector<T>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

template <typename T>
json matrix_json(const Matrix<T>& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(vector_json(m.row(i)));
    return a;
}

inline RatVector rat_vector_from_json(const json& j, const std::string& where, std::size_t n = SIZE_MAX)
{
    detail::array(j, where, n);
    RatVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline IntVector int_vector_from_json(const json& j, const std::string& where, std::size_t n = SIZE_MAX)
{
    detail::array(j, where, n);
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline RatMatrix rat_matrix_from_json(const json& j, const std::string& where, std::size_t cols)
{
    detail::array(j, where);
    RatMatrix m(0, cols);
    for (std::size_t i = 0; i < j.size(); ++i)
        m.append_row(rat_vector_from_json(j[i], where + "[" + std::to_string(i) + "]", cols));
    return m;
}

// ---------------------------------------------------------------------------
// Exterior algebra objects

inline json vec6_json(const Vec6& v) { return vector_json(v); }

inline Vec6 vec6_from_json(const json& j, const std::string& where = "vec6")
{
    return rat_vector_from_json(j, where, 6);
}

inline json to_json(const Subspace3& w) { return {{"generators", matrix_json(w.rows())}}; }

inline Subspace3 subspace3_from_json(const json& j, const std::string& where = "subspace")
{
    RatMatrix g = rat_matrix_from_json(detail::field(j, "generators", where), where + ".generators", 6);
    try {
        return Subspace3(g);
    } catch (const std::invalid_argument& e) {
        detail::fail(where, e.what());
    }
}

inline json to_json(const LagrangianFrame& a) { return {{"rows", matrix_json(a.rows())}}; }

inline LagrangianFrame frame_from_json(const json& j, const std::string& where = "frame")
{
    RatMatrix g = rat_matrix_from_json(detail::field(j, "rows", where), where + ".rows", 20);
    try {
        return LagrangianFrame(g);
    } catch (const std::invalid_argument& e) {
        detail::fail(where, e.what());
    }
}

// ---------------------------------------------------------------------------
// Lattices: {"rank": n, "gram": [[...]], "named": {"name": [...]}}

inline json to_json(const EvenLattice& l)
{
    json named = json::object();
    for (const auto& [k, v] : l.named())
        named[k] = vector_json(v);
    return {{"rank", l.rank()}, {"gram", matrix_json(l.gram())}, {"named", named}};
}

inline EvenLattice lattice_from_json(const json& j, const std::string& where = "lattice")
{
    const json& rk = detail::field(j, "rank", where);
    if (!rk.is_number_unsigned())
        detail::fail(where + ".rank", "expected a non-negative integer");
    std::size_t n = rk.get<std::size_t>();
    const json& g = detail::array(detail::field(j, "gram", where), where + ".gram", n);
    IntMatrix gram(0, n);
    for (std::size_t i = 0; i < n; ++i)
        gram.append_row(int_vector_from_json(g[i], where + ".gram[" + std::to_string(i) + "]", n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            if (gram(i, k) != gram(k, i))
                detail::fail(where + ".gram", "not symmetric at (" + std::to_string(i) + ", " + std::to_string(k) + ")");
    std::map<std::string, IntVector> named;
    if (j.contains("named")) {
        const json& nm = j["named"];
        if (!nm.is_object())
            detail::fail(where + ".named", "expected an object");
        for (auto it = nm.begin(); it != nm.end(); ++it)
            named[it.key()] = int_vector_from_json(it.value(), where + ".named." + it.key(), n);
    }
    try {
        return EvenLattice(gram, named);
    } catch (const std::invalid_argument& e) {
        detail::fail(where, e.what());
    }
}

// ---------------------------------------------------------------------------
// Polynomials: {"vars": [...], "text": "..."}

inline json to_json(const MultiPoly& f) { return {{"vars", *f.vars()}, {"text", to_text(f)}}; }

inline MultiPoly poly_from_json(const json& j, const std::string& where = "poly")
{
    const json& v = detail::array(detail::field(j, "vars", where), where + ".vars");
    std::vector<std::string> names;
    for (const auto& x : v) {
        if (!x.is_string())
            detail::fail(where + ".vars", "expected variable names");
        names.push_back(x.get<std::string>());
    }
    const json& t = detail::field(j, "text", where);
    if (!t.is_string())
        detail::fail(where + ".text", "expected a string");
    try {
        return parse_poly(t.get<std::string>(), make_vars(names));
    } catch (const std::exception& e) {
        detail::fail(where + ".text", e.what());
    }
}

// ---------------------------------------------------------------------------
// Hilbert-square classes: {"k3": [22 integers], "xi": m}

inline json to_json(const HilbClass& c) { return {{"k3", vector_json(c.a)}, {"xi", to_json(c.m)}}; }

inline HilbClass hilb_class_from_json(const json& j, const std::string& where = "class")
{
    return {int_vector_from_json(detail::field(j, "k3", where), where + ".k3", 22),
            integer_from_json(detail::field(j, "xi", where), where + ".xi")};
}

inline json to_json(const NSClass& c) { return {{"x", to_json(c.x)}, {"y", to_json(c.y)}}; }

// ---------------------------------------------------------------------------
// Files

/** Parses a JSON document; syntax errors report the line and column. */
inline json parse_text(const std::string& text, const std::string& source = "input")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SchemaError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
    }
}

inline json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

} // namespace epw::io
