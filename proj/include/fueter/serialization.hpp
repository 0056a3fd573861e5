#ifndef FUETER_SERIALIZATION_HPP
#define FUETER_SERIALIZATION_HPP

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "fueter/grid_bvp.hpp"
#include "fueter/operators.hpp"
#include "fueter/poly.hpp"
#include "fueter/symbol_analysis.hpp"
#include "fueter/torus.hpp"

namespace fueter {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- operators

inline Json to_json(const FirstOrderOperator& op) {
    Json entries = Json::array();
    for (const auto& cv : op.e) {
        Json entry = Json::array();
        for (const auto& c : cv) entry.push_back(Json::array({c.real(), c.imag()}));
        entries.push_back(std::move(entry));
    }
    return Json{{"kind", "first_order"}, {"rows", op.rows}, {"cols", op.cols}, {"entries", entries}};
}

inline Json to_json(const SecondOrderOperator& op) {
    Json entries = Json::array();
    for (const auto& q : op.e) {
        Json entry = Json::array();
        for (const auto& c : q.c) entry.push_back(Json::array({c.real(), c.imag()}));
        entries.push_back(std::move(entry));
    }
    return Json{{"kind", "second_order"}, {"rows", op.rows}, {"cols", op.cols}, {"entries", entries}};
}

inline FirstOrderOperator first_order_from_json(const Json& j) {
    if (j.at("kind") != "first_order") throw io_error("first_order_from_json: wrong kind");
    FirstOrderOperator op(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& entries = j.at("entries");
    if (entries.size() != op.e.size()) throw io_error("first_order_from_json: entry count mismatch");
    for (size_t i = 0; i < op.e.size(); ++i)
        for (int m = 0; m < 4; ++m)
            op.e[i][m] = Complex(entries[i][m][0].get<double>(), entries[i][m][1].get<double>());
    return op;
}

inline SecondOrderOperator second_order_from_json(const Json& j) {
    if (j.at("kind") != "second_order") throw io_error("second_order_from_json: wrong kind");
    SecondOrderOperator op(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto& entries = j.at("entries");
    if (entries.size() != op.e.size()) throw io_error("second_order_from_json: entry count mismatch");
    for (size_t i = 0; i < op.e.size(); ++i)
        for (int m = 0; m < 10; ++m)
            op.e[i].c[m] = Complex(entries[i][m][0].get<double>(), entries[i][m][1].get<double>());
    return op;
}

// ------------------------------------------------------------------- fields

inline Json to_json(const Field& f) {
    Json data = Json::array();
    for (const auto& v : f.data) {
        data.push_back(v.real());
        data.push_back(v.imag());
    }
    return Json{{"grid", {{"type", "torus"}, {"n", f.grid.n}, {"period", f.grid.period}}},
                {"m", f.m},
                {"data", data}};
}

inline Field field_from_json(const Json& j) {
    const auto& g = j.at("grid");
    if (g.contains("type") && g.at("type") != "torus")
        throw io_error("field_from_json: not a torus field");
    Field f(TorusGrid(g.at("n").get<int>(), g.at("period").get<double>()), j.at("m").get<int>());
    const auto& data = j.at("data");
    if (data.size() != 2 * f.data.size()) throw io_error("field_from_json: data length mismatch");
    for (size_t i = 0; i < f.data.size(); ++i)
        f.data[i] = Complex(data[2 * i].get<double>(), data[2 * i + 1].get<double>());
    return f;
}

inline Json to_json(const BoxField& f) {
    Json data = Json::array();
    for (Eigen::Index i = 0; i < f.data.size(); ++i) {
        data.push_back(f.data(i).real());
        data.push_back(f.data(i).imag());
    }
    return Json{{"grid",
                 {{"type", "box"}, {"n", f.grid.n}, {"h", f.grid.h}, {"level", f.level}}},
                {"m", f.m},
                {"data", data}};
}

inline BoxField box_field_from_json(const Json& j) {
    const auto& g = j.at("grid");
    if (!g.contains("type") || g.at("type") != "box")
        throw io_error("box_field_from_json: not a box field");
    BoxField f(BoxGrid(g.at("n").get<int>(), g.at("h").get<double>()), g.at("level").get<int>(),
               j.at("m").get<int>());
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != 2 * f.data.size())
        throw io_error("box_field_from_json: data length mismatch");
    for (Eigen::Index i = 0; i < f.data.size(); ++i)
        f.data(i) = Complex(data[2 * i].get<double>(), data[2 * i + 1].get<double>());
    return f;
}

// Binary field format: "FHFLD1" | u8 domain (0 torus, 1 box) | u8 level |
// u32 n | u32 m | f64 geometry (period or spacing) | f64 [re,im] payload,
// all little-endian, payload site-major then component.

namespace detail {

inline void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void write_f64(std::ostream& os, double v) {
    static_assert(sizeof(double) == 8);
    os.write(reinterpret_cast<const char*>(&v), 8);  // little-endian hosts
}

inline double read_f64(std::istream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

inline void write_binary_header(std::ostream& os, std::uint8_t domain, std::uint8_t level,
                                std::uint32_t n, std::uint32_t m, double geometry) {
    os.write("FHFLD1", 6);
    os.put(static_cast<char>(domain));
    os.put(static_cast<char>(level));
    write_u32(os, n);
    write_u32(os, m);
    write_f64(os, geometry);
}

struct BinaryHeader {
    std::uint8_t domain, level;
    std::uint32_t n, m;
    double geometry;
};

inline BinaryHeader read_binary_header(std::istream& is) {
    char magic[6];
    is.read(magic, 6);
    if (!is || std::string(magic, 6) != "FHFLD1")
        throw io_error("read_binary_header: bad magic (expected FHFLD1)");
    BinaryHeader h;
    h.domain = static_cast<std::uint8_t>(is.get());
    h.level = static_cast<std::uint8_t>(is.get());
    h.n = read_u32(is);
    h.m = read_u32(is);
    h.geometry = read_f64(is);
    if (!is) throw io_error("read_binary_header: truncated header");
    return h;
}

} // namespace detail

inline void write_binary(std::ostream& os, const Field& f) {
    detail::write_binary_header(os, 0, 0, static_cast<std::uint32_t>(f.grid.n),
                                static_cast<std::uint32_t>(f.m), f.grid.period);
    for (const auto& v : f.data) {
        detail::write_f64(os, v.real());
        detail::write_f64(os, v.imag());
    }
}

inline Field read_binary_field(std::istream& is) {
    const auto h = detail::read_binary_header(is);
    if (h.domain != 0) throw io_error("read_binary_field: not a torus field");
    Field f(TorusGrid(static_cast<int>(h.n), h.geometry), static_cast<int>(h.m));
    for (auto& v : f.data) {
        const double re = detail::read_f64(is);
        const double im = detail::read_f64(is);
        v = Complex(re, im);
    }
    if (!is) throw io_error("read_binary_field: truncated payload");
    return f;
}

inline void write_binary(std::ostream& os, const BoxField& f) {
    detail::write_binary_header(os, 1, static_cast<std::uint8_t>(f.level),
                                static_cast<std::uint32_t>(f.grid.n),
                                static_cast<std::uint32_t>(f.m), f.grid.h);
    for (Eigen::Index i = 0; i < f.data.size(); ++i) {
        detail::write_f64(os, f.data(i).real());
        detail::write_f64(os, f.data(i).imag());
    }
}

inline BoxField read_binary_box_field(std::istream& is) {
    const auto h = detail::read_binary_header(is);
    if (h.domain != 1) throw io_error("read_binary_box_field: not a box field");
    BoxField f(BoxGrid(static_cast<int>(h.n), h.geometry), h.level, static_cast<int>(h.m));
    for (Eigen::Index i = 0; i < f.data.size(); ++i) {
        const double re = detail::read_f64(is);
        const double im = detail::read_f64(is);
        f.data(i) = Complex(re, im);
    }
    if (!is) throw io_error("read_binary_box_field: truncated payload");
    return f;
}

// -------------------------------------------------------------- polynomials

inline Json to_json(const PolyField& p) {
    Json comps = Json::array();
    for (const auto& comp : p.comps) {
        Json terms = Json::array();
        for (const auto& [a, v] : comp)
            terms.push_back(Json{{"monomial", Json::array({a[0], a[1], a[2], a[3]})},
                                 {"re", v.real()},
                                 {"im", v.imag()}});
        comps.push_back(std::move(terms));
    }
    return Json{{"m", p.m}, {"degree", p.degree}, {"components", comps}};
}

inline PolyField poly_from_json(const Json& j) {
    PolyField p(j.at("m").get<int>(), j.at("degree").get<int>());
    const auto& comps = j.at("components");
    if (static_cast<int>(comps.size()) != p.m)
        throw io_error("poly_from_json: component count mismatch");
    for (int c = 0; c < p.m; ++c)
        for (const auto& term : comps[c]) {
            const auto& mono = term.at("monomial");
            Monomial a{mono[0].get<int>(), mono[1].get<int>(), mono[2].get<int>(),
                       mono[3].get<int>()};
            p.set(c, a, Complex(term.at("re").get<double>(), term.at("im").get<double>()));
        }
    return p;
}

// ------------------------------------------------------------------ reports

inline Json to_json(const SymbolExactnessReport& r, double lambda_min) {
    return Json{{"k", r.k},
                {"xi", Json::array({r.xi[0], r.xi[1], r.xi[2], r.xi[3]})},
                {"rank_d0", r.rank_d0},
                {"rank_d1", r.rank_d1},
                {"product_norm", r.product_norm},
                {"ker_im_gap", r.ker_im_gap},
                {"lambda_min", lambda_min}};
}

// --------------------------------------------------------------- file utils

inline Json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open " + path);
    Json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw io_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open " + path + " for writing");
    os << j.dump(2) << "\n";
}

} // namespace fueter

#endif // FUETER_SERIALIZATION_HPP
