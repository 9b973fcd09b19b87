#pragma once

// Plain-text formats: code files, profile strings, k_opt tables, Pyramid and
// GCC spec files.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mllrc/bounds.hpp"
#include "mllrc/constructions.hpp"
#include "mllrc/error.hpp"
#include "mllrc/linear_code.hpp"

namespace mllrc {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline long long parse_int(const std::string& s, const std::string& what) {
    long long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || s.empty()) throw ParseError("expected integer for " + what + ", got '" + s + "'");
    return v;
}

inline std::vector<long long> parse_int_list(const std::string& s, char sep, const std::string& what) {
    std::vector<long long> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(parse_int(trim(item), what));
    return out;
}

/// Lines with comments ('#') stripped and blank lines dropped.
inline std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

/// "a=1 b=2 word" -> {a:1, b:2}; bare words go under their own name with "".
inline std::map<std::string, std::string> parse_fields(const std::string& line) {
    std::map<std::string, std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            out[tok] = "";
        } else {
            out[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    return out;
}

inline long long field_int(const std::map<std::string, std::string>& f, const std::string& key) {
    auto it = f.find(key);
    if (it == f.end()) throw ParseError("missing field '" + key + "'");
    return parse_int(it->second, key);
}

inline std::vector<Element> parse_row(const std::string& line, std::size_t expected, const FiniteField& F,
                                      const std::string& what) {
    std::istringstream is(line);
    std::vector<Element> row;
    std::string tok;
    while (is >> tok) {
        const auto v = parse_int(tok, what);
        if (v < 0 || v >= static_cast<long long>(F.order()))
            throw ParseError(what + ": entry " + tok + " outside " + F.name());
        row.push_back(static_cast<Element>(v));
    }
    if (row.size() != expected)
        throw ParseError(what + ": expected " + std::to_string(expected) + " entries, got " + std::to_string(row.size()));
    return row;
}

inline std::vector<Element> parse_modulus(const std::string& s) {
    std::vector<Element> out;
    for (auto v : parse_int_list(s, ',', "modulus")) {
        if (v < 0) throw ParseError("negative modulus coefficient");
        out.push_back(static_cast<Element>(v));
    }
    return out;
}

inline std::string join_modulus(const std::vector<Element>& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(m[i]);
    }
    return out;
}

inline FieldPtr make_field_checked(long long p, long long m, const std::optional<std::vector<Element>>& modulus) {
    if (p < 2 || m < 1 || p > 65536 || m > 16) throw ParseError("field parameters out of range");
    try {
        return FiniteField::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(m), modulus);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("bad field: ") + e.what());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Code files

inline void write_code(std::ostream& out, const LinearCode& code) {
    const auto& F = *code.field();
    out << "q=" << F.order() << " p=" << F.characteristic() << " m=" << F.degree() << " n=" << code.length()
        << " k=" << code.dimension() << "\n";
    if (F.degree() > 1) out << "modulus=" << detail::join_modulus(F.modulus()) << "\n";
    const auto& g = code.generator();
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) out << (c ? " " : "") << g(r, c);
        out << "\n";
    }
}

inline std::string code_to_string(const LinearCode& code) {
    std::ostringstream os;
    write_code(os, code);
    return os.str();
}

inline LinearCode read_code(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw ParseError("empty code file");
    const auto head = detail::parse_fields(lines[0]);
    const auto q = detail::field_int(head, "q"), p = detail::field_int(head, "p"), m = detail::field_int(head, "m");
    const auto n = detail::field_int(head, "n"), k = detail::field_int(head, "k");
    if (n < 1 || k < 1 || k > n) throw ParseError("need 1 <= k <= n");
    std::size_t next = 1;
    std::optional<std::vector<Element>> modulus;
    if (next < lines.size() && lines[next].rfind("modulus=", 0) == 0) {
        modulus = detail::parse_modulus(lines[next].substr(8));
        ++next;
    }
    auto F = detail::make_field_checked(p, m, modulus);
    if (static_cast<long long>(F->order()) != q) throw ParseError("q does not equal p^m");
    if (lines.size() - next != static_cast<std::size_t>(k))
        throw ParseError("expected " + std::to_string(k) + " generator rows, got " + std::to_string(lines.size() - next));
    std::vector<std::vector<Element>> rows;
    for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r)
        rows.push_back(detail::parse_row(lines[next + r], static_cast<std::size_t>(n), *F,
                                         "generator row " + std::to_string(r)));
    try {
        return LinearCode::from_generator(MatrixGF::from_rows(F, rows));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid generator: ") + e.what());
    }
}

inline LinearCode code_from_string(const std::string& s) {
    std::istringstream is(s);
    return read_code(is);
}

// ---------------------------------------------------------------------------
// Profile strings: "(n1,r1),(n2,r2),..."

inline ProfileShape parse_profile(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    ProfileShape out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') throw ParseError("profile: expected '(' at position " + std::to_string(i));
        const auto close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("profile: missing ')'");
        const auto inner = detail::parse_int_list(s.substr(i + 1, close - i - 1), ',', "profile");
        if (inner.size() != 2) throw ParseError("profile: each class needs (n,r)");
        out.emplace_back(static_cast<int>(inner[0]), static_cast<int>(inner[1]));
        i = close + 1;
        if (i < s.size()) {
            if (s[i] != ',') throw ParseError("profile: expected ',' between classes");
            ++i;
            if (i == s.size()) throw ParseError("profile: trailing ','");
        }
    }
    if (out.empty()) throw ParseError("profile: no classes");
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    try {
        validate_shape(out);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("profile: ") + e.what());
    }
    return out;
}

// ---------------------------------------------------------------------------
// k_opt tables: "q n d k provenance..."

inline void read_kopt_table(std::istream& in, KoptTable& table) {
    for (const auto& line : detail::content_lines(in)) {
        std::istringstream is(line);
        std::string q, n, d, k;
        if (!(is >> q >> n >> d >> k)) throw ParseError("k_opt table: short line '" + line + "'");
        std::string prov;
        std::getline(is, prov);
        prov = detail::trim(prov);
        if (prov.empty()) throw ParseError("k_opt table: entry without provenance: '" + line + "'");
        try {
            table.add(static_cast<std::uint32_t>(detail::parse_int(q, "q")), static_cast<int>(detail::parse_int(n, "n")),
                      static_cast<int>(detail::parse_int(d, "d")), static_cast<int>(detail::parse_int(k, "k")), prov);
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("k_opt table: ") + e.what());
        }
    }
}

// ---------------------------------------------------------------------------
// Pyramid spec:
//   q=7 k=4 d=4
//   class r=2 info=0,1,2,3 [blocks=0,1|2,3]

inline PyramidSpec read_pyramid_spec(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw ParseError("empty pyramid spec");
    const auto head = detail::parse_fields(lines[0]);
    PyramidSpec spec;
    spec.q = static_cast<std::uint32_t>(detail::field_int(head, "q"));
    spec.k = static_cast<int>(detail::field_int(head, "k"));
    spec.d = static_cast<int>(detail::field_int(head, "d"));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = detail::parse_fields(lines[i]);
        if (!f.count("class")) throw ParseError("pyramid spec: expected 'class' line, got '" + lines[i] + "'");
        PyramidClass cls;
        cls.r = static_cast<int>(detail::field_int(f, "r"));
        auto it = f.find("info");
        if (it == f.end()) throw ParseError("pyramid spec: class without info=");
        for (auto v : detail::parse_int_list(it->second, ',', "info")) {
            if (v < 0) throw ParseError("pyramid spec: negative index");
            cls.info.push_back(static_cast<std::size_t>(v));
        }
        if (auto b = f.find("blocks"); b != f.end()) {
            std::istringstream bs(b->second);
            std::string block;
            while (std::getline(bs, block, '|')) {
                std::vector<std::size_t> blk;
                for (auto v : detail::parse_int_list(block, ',', "blocks")) {
                    if (v < 0) throw ParseError("pyramid spec: negative index");
                    blk.push_back(static_cast<std::size_t>(v));
                }
                cls.blocks.push_back(std::move(blk));
            }
        }
        spec.classes.push_back(std::move(cls));
    }
    return spec;
}

// ---------------------------------------------------------------------------
// GCC spec:
//   p=2 N=5 nb=4
//   level ell=2 lambda=1 outer_k=2 [modulus=1,1,1]
//   <outer_k rows of N elements of GF(p^ell)>
//   <lambda*ell rows of nb elements of GF(p)>
//   level ...

inline GccSpec read_gcc_spec(std::istream& in) {
    const auto lines = detail::content_lines(in);
    if (lines.empty()) throw ParseError("empty GCC spec");
    const auto head = detail::parse_fields(lines[0]);
    const auto p = detail::field_int(head, "p");
    const auto N = detail::field_int(head, "N");
    const auto nb = detail::field_int(head, "nb");
    if (N < 1 || nb < 1) throw ParseError("GCC spec: N and nb must be positive");
    auto Fp = detail::make_field_checked(p, 1, std::nullopt);
    GccSpec spec;
    std::size_t i = 1;
    while (i < lines.size()) {
        const auto f = detail::parse_fields(lines[i]);
        if (!f.count("level")) throw ParseError("GCC spec: expected 'level' line, got '" + lines[i] + "'");
        const auto ell = detail::field_int(f, "ell");
        const auto lambda = detail::field_int(f, "lambda");
        const auto outer_k = detail::field_int(f, "outer_k");
        if (ell < 1 || lambda < 1 || outer_k < 1) throw ParseError("GCC spec: ell, lambda, outer_k must be positive");
        std::optional<std::vector<Element>> modulus;
        if (auto it = f.find("modulus"); it != f.end()) modulus = detail::parse_modulus(it->second);
        auto Fo = detail::make_field_checked(p, ell, modulus);
        ++i;
        const auto inner_rows = static_cast<std::size_t>(lambda * ell);
        if (i + static_cast<std::size_t>(outer_k) + inner_rows > lines.size()) throw ParseError("GCC spec: truncated level");
        std::vector<std::vector<Element>> outer, inner;
        for (long long r = 0; r < outer_k; ++r, ++i)
            outer.push_back(detail::parse_row(lines[i], static_cast<std::size_t>(N), *Fo, "outer row"));
        for (std::size_t r = 0; r < inner_rows; ++r, ++i)
            inner.push_back(detail::parse_row(lines[i], static_cast<std::size_t>(nb), *Fp, "inner row"));
        spec.levels.push_back({MatrixGF::from_rows(Fo, outer), static_cast<unsigned>(lambda), MatrixGF::from_rows(Fp, inner)});
    }
    if (spec.levels.empty()) throw ParseError("GCC spec: no levels");
    return spec;
}

inline void write_gcc_spec(std::ostream& out, const GccSpec& spec) {
    const auto& first = spec.levels.front();
    out << "p=" << first.inner.field()->characteristic() << " N=" << first.outer.cols() << " nb=" << first.inner.cols()
        << "\n";
    for (const auto& lv : spec.levels) {
        const auto& Fo = *lv.outer.field();
        out << "level ell=" << Fo.degree() << " lambda=" << lv.lambda << " outer_k=" << lv.outer.rows();
        if (Fo.degree() > 1) out << " modulus=" << detail::join_modulus(Fo.modulus());
        out << "\n";
        for (const auto* m : {&lv.outer, &lv.inner})
            for (std::size_t r = 0; r < m->rows(); ++r) {
                for (std::size_t c = 0; c < m->cols(); ++c) out << (c ? " " : "") << (*m)(r, c);
                out << "\n";
            }
    }
}

}  // namespace mllrc
