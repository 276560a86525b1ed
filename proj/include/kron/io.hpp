#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kron/blowup.hpp"
#include "kron/curve.hpp"
#include "kron/kronecker.hpp"
#include "kron/quadric.hpp"
#include "kron/steiner.hpp"

namespace kron {

// insertion-ordered JSON keeps report bytes reproducible
using Json = nlohmann::ordered_json;

inline Json encode_scalar(const GaussianRational& z) { return scalar_to_string(z); }

inline GaussianRational decode_scalar(const Json& j) {
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
    if (!j.is_string()) throw std::invalid_argument("scalar: expected string or integer");
    return scalar_checked(j.get<std::string>());
}

inline Json encode_form(const BinaryForm& f) {
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(encode_scalar(c));
    return Json{{"degree", f.degree()}, {"coeffs", coeffs}};
}

inline BinaryForm decode_form(const Json& j) {
    if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
        throw std::invalid_argument("form: need degree and coeffs");
    long d = j.at("degree").get<long>();
    std::vector<GaussianRational> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(decode_scalar(c));
    return BinaryForm(d, std::move(coeffs));
}

inline Json encode_vector(const Vector& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(encode_scalar(c));
    return out;
}

inline Vector decode_vector(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("vector: expected array");
    Vector v;
    for (const auto& c : j) v.push_back(decode_scalar(c));
    return v;
}

inline Json encode_matrix(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode_scalar(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Matrix decode_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected nonempty array");
    std::vector<std::vector<GaussianRational>> rows;
    for (const auto& r : j) {
        std::vector<GaussianRational> row;
        for (const auto& c : r) row.push_back(decode_scalar(c));
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(rows);
}

inline Json encode_resolution(const SteinerResolution& r) {
    Json matrix = Json::array();
    for (std::size_t i = 0; i < r.targets(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < r.sources(); ++j) row.push_back(encode_form(r.entry(i, j)));
        matrix.push_back(row);
    }
    return Json{{"source_twists", r.source_twists()}, {"target_twists", r.target_twists()},
                {"matrix", matrix}};
}

inline SteinerResolution decode_resolution(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("resolution: expected object");
    std::vector<long> e = j.at("source_twists").get<std::vector<long>>();
    std::vector<long> f = j.at("target_twists").get<std::vector<long>>();
    std::vector<std::vector<BinaryForm>> m;
    for (const auto& row : j.at("matrix")) {
        std::vector<BinaryForm> r;
        for (const auto& cell : row) r.push_back(decode_form(cell));
        m.push_back(std::move(r));
    }
    return SteinerResolution(std::move(e), std::move(f), std::move(m));
}

inline Json encode_curve(const RationalCurve& c) {
    Json phi = Json::array();
    for (const auto& f : c.phi()) phi.push_back(encode_form(f));
    return Json{{"ambient", c.ambient()}, {"degree", c.degree()}, {"phi", phi}};
}

inline RationalCurve decode_curve(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("curve: expected object");
    long n = j.at("ambient").get<long>();
    long d = j.at("degree").get<long>();
    std::vector<BinaryForm> phi;
    for (const auto& f : j.at("phi")) phi.push_back(decode_form(f));
    return RationalCurve(n, d, std::move(phi));
}

inline Json encode_module(const KroneckerModule& m) {
    Json maps = Json::array();
    for (std::size_t i = 0; i < m.r(); ++i) maps.push_back(encode_matrix(m.map(i)));
    return Json{{"r", m.r()}, {"k", m.dim_v0()}, {"n", m.dim_v1()}, {"maps", maps}};
}

inline KroneckerModule decode_module(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("module: expected object");
    std::size_t k = j.at("k").get<std::size_t>();
    std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Matrix> maps;
    for (const auto& m : j.at("maps")) maps.push_back(decode_matrix(m));
    if (j.contains("r") && j.at("r").get<std::size_t>() != maps.size())
        throw std::invalid_argument("module: r does not match the number of maps");
    KroneckerModule km(k, n, std::move(maps));
    return km;
}

inline QuaternionicStructure decode_quaternionic(const Json& j, std::size_t r) {
    QuaternionicStructure qs{decode_matrix(j.at("J0")), decode_matrix(j.at("T")),
                             SigmaInvolution::standard(r)};
    if (j.contains("variant")) {
        const Json& v = j.at("variant");
        if (v.is_string()) {
            std::string s = v.get<std::string>();
            if (s == "standard")
                qs.sigma = SigmaInvolution::standard(r);
            else if (s == "split")
                qs.sigma = SigmaInvolution::split(r);
            else
                throw std::invalid_argument("variant: standard, split, or sign array");
        } else {
            std::vector<int> signs = v.get<std::vector<int>>();
            if (signs.size() != r / 2) throw std::invalid_argument("variant: need r/2 signs");
            qs.sigma = SigmaInvolution{signs};
        }
    }
    return qs;
}

inline Json encode_vec4(const Vec4& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(encode_scalar(c));
    return out;
}

inline Vec4 decode_vec4(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw std::invalid_argument("expected 4 scalars");
    Vec4 v;
    for (std::size_t i = 0; i < 4; ++i) v[i] = decode_scalar(j[i]);
    return v;
}

inline Json encode_line(const QuadricLine& l) {
    return Json{{"a", encode_vec4(l.a)}, {"b", encode_vec4(l.b)}, {"c", encode_vec4(l.c)},
                {"d", encode_vec4(l.d)}};
}

// accepts either the four-vector form or the real {x, y} form
inline QuadricLine decode_line(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("line: expected object");
    if (j.contains("x") && j.contains("y"))
        return real_line(RealLinePair{decode_vec4(j.at("x")), decode_vec4(j.at("y"))});
    return QuadricLine{decode_vec4(j.at("a")), decode_vec4(j.at("b")), decode_vec4(j.at("c")),
                       decode_vec4(j.at("d"))};
}

inline RealLinePair decode_real_pair(const Json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw std::invalid_argument("real line: need x and y");
    return RealLinePair{decode_vec4(j.at("x")), decode_vec4(j.at("y"))};
}

inline Json encode_quaternion(const Quaternion& q) {
    return Json::array({encode_scalar(q.a), encode_scalar(q.b)});
}

inline Quaternion decode_quaternion(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("quaternion: expected [complex, complex]");
    return Quaternion(decode_scalar(j[0]), decode_scalar(j[1]));
}

inline Json encode_tuple(const QuatTuple& t) {
    return Json{{"q0", encode_quaternion(t.q0)}, {"q1", encode_quaternion(t.q1)},
                {"p0", encode_quaternion(t.p0)}, {"p1", encode_quaternion(t.p1)}};
}

inline QuatTuple decode_tuple(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("tuple: expected object");
    return QuatTuple{decode_quaternion(j.at("q0")), decode_quaternion(j.at("q1")),
                     decode_quaternion(j.at("p0")), decode_quaternion(j.at("p1"))};
}

inline Json encode_section(const BlowupSection& s) {
    Json coords = Json::array();
    for (const auto& c : s.coords) coords.push_back(encode_scalar(c));
    return Json{{"coords", coords}};
}

inline BlowupSection decode_section(const Json& j) {
    if (!j.is_object() || !j.contains("coords")) throw std::invalid_argument("section: need coords");
    const Json& c = j.at("coords");
    if (!c.is_array() || c.size() != 5) throw std::invalid_argument("section: need 5 coordinates");
    BlowupSection s;
    for (std::size_t i = 0; i < 5; ++i) s.coords[i] = decode_scalar(c[i]);
    return s;
}

inline Json encode_splitting(const std::map<long, long>& mult) {
    Json out = Json::object();
    for (const auto& [deg, m] : mult) out[std::to_string(deg)] = m;
    return out;
}

}  // namespace kron
