#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "submodule.hpp"

namespace buchsbaum {

/* Rejected input: carries the 1-based line and column of the offense. */
struct ParseError : std::runtime_error {
    int line = 0, col = 0;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " +
                             std::to_string(c) + ")"),
          line(l),
          col(c) {}
};

/*
 * An ideal file names the ring on one line, then lists one homogeneous
 * generator per line:
 *
 *   ring p 32003 vars x0 x1 x2 x3
 *   ideal
 *   x0*x2
 *   3*x0^2*x1 - x2^2*x3
 *
 * Full-line comments start with '#'; a comment of the form "# key: value"
 * is kept as metadata.
 */
struct IdealFile {
    PolyRing ring;
    std::vector<Polynomial> gens;
    std::map<std::string, std::string> metadata;
};

namespace detail {

struct LineScan {
    const std::string& s;
    int line;
    size_t pos = 0;

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        ws();
        return pos >= s.size();
    }
    int col() const { return int(pos) + 1; }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }

    long long integer(const char* what) {
        ws();
        int c0 = col();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError(std::string("expected ") + what, line, c0);
        long long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > (1ll << 40)) throw ParseError(std::string(what) + " is out of range", line, c0);
            ++pos;
        }
        return v;
    }
};

/* one factor: either an integer or x<k> with an optional ^e */
inline void parse_factor(LineScan& sc, const PolyRing& r, long long& coeff,
                         std::vector<int>& exps) {
    sc.ws();
    int c0 = sc.col();
    char ch = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        long long v = sc.integer("a coefficient");
        coeff = (coeff * (v % r.field.p)) % r.field.p;
        return;
    }
    if (ch != 'x') throw ParseError("expected a coefficient or a variable", sc.line, c0);
    ++sc.pos;
    if (!std::isdigit(static_cast<unsigned char>(sc.peek())))
        throw ParseError("expected a variable index after 'x'", sc.line, sc.col());
    long long idx = sc.integer("a variable index");
    if (idx >= r.nvars)
        throw ParseError("variable x" + std::to_string(idx) + " is not in the ring", sc.line, c0);
    long long e = 1;
    if (sc.peek() == '^') {
        ++sc.pos;
        e = sc.integer("an exponent");
        if (e < 1) throw ParseError("exponent must be positive", sc.line, c0);
    }
    exps[size_t(idx)] += int(e);
    if (exps[size_t(idx)] > 255) throw ParseError("exponent too large", sc.line, c0);
}

/* one generator line; records the column and degree of each term */
inline Polynomial parse_poly_line(const std::string& text, int line, const PolyRing& r) {
    LineScan sc{text, line};
    Polynomial out(r);
    std::vector<std::pair<int, int>> terms;  // (column, degree)
    bool first = true;
    while (!sc.done()) {
        int sign = 1;
        char ch = sc.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++sc.pos;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms", line, sc.col());
        }
        sc.ws();
        int tcol = sc.col();
        long long coeff = 1;
        std::vector<int> exps(size_t(r.nvars), 0);
        parse_factor(sc, r, coeff, exps);
        while (true) {
            sc.ws();
            if (sc.peek() != '*') break;
            ++sc.pos;
            parse_factor(sc, r, coeff, exps);
        }
        Exponent m;
        int deg = 0;
        for (int i = 0; i < r.nvars; ++i) {
            m.e[size_t(i)] = static_cast<uint8_t>(exps[size_t(i)]);
            deg += exps[size_t(i)];
        }
        m.deg = static_cast<uint16_t>(deg);
        uint32_t c = r.field.reduce_ll(sign * coeff);
        out = out + Polynomial::monomial(r, m, c);
        terms.push_back({tcol, deg});
        first = false;
    }
    for (const auto& [tcol, deg] : terms)
        if (deg != terms.front().second)
            throw ParseError("generator is not homogeneous", line, tcol);
    if (out.is_zero()) throw ParseError("generator reduces to zero", line, 1);
    return out;
}

inline std::vector<std::string> split_ws(const std::string& s, std::vector<int>& cols) {
    std::vector<std::string> toks;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        cols.push_back(int(i) + 1);
        toks.push_back(s.substr(i, j - i));
        i = j;
    }
    return toks;
}

inline PolyRing parse_ring_line(const std::string& s, int line) {
    std::vector<int> cols;
    std::vector<std::string> t = split_ws(s, cols);
    auto fail = [&](size_t i, const std::string& msg) -> ParseError {
        return ParseError(msg, line, i < cols.size() ? cols[i] : int(s.size()) + 1);
    };
    if (t.empty() || t[0] != "ring") throw fail(0, "expected the ring header 'ring p <prime> vars x0 ...'");
    if (t.size() < 2 || t[1] != "p") throw fail(1, "expected 'p' after 'ring'");
    if (t.size() < 3) throw fail(2, "expected a prime after 'p'");
    long long p = 0;
    for (char c : t[2]) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw fail(2, "expected a prime after 'p'");
        p = p * 10 + (c - '0');
        if (p > 0x7fffffff) throw fail(2, "characteristic is out of range");
    }
    if (!is_prime_u32(uint32_t(p)))
        throw fail(2, "characteristic " + std::to_string(p) + " is not prime");
    if (t.size() < 4 || t[3] != "vars") throw fail(3, "expected 'vars' after the characteristic");
    size_t nv = t.size() - 4;
    if (nv < 1) throw fail(4, "expected at least one variable");
    if (nv > size_t(kMaxVars))
        throw fail(4, "at most " + std::to_string(kMaxVars) + " variables are supported");
    for (size_t i = 0; i < nv; ++i)
        if (t[4 + i] != "x" + std::to_string(i))
            throw fail(4 + i, "variables must be named x0, x1, ... in order");
    return PolyRing(PrimeField(uint32_t(p)), int(nv));
}

}  // namespace detail

inline IdealFile parse_ideal_text(const std::string& text) {
    IdealFile out;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    int stage = 0;  // 0: expect ring, 1: expect 'ideal', 2: generators
    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        size_t i = 0;
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        if (i >= raw.size()) continue;
        if (raw[i] == '#') {
            size_t c = raw.find(':', i + 1);
            if (c != std::string::npos) {
                auto trim = [](std::string s) {
                    size_t a = s.find_first_not_of(" \t");
                    size_t b = s.find_last_not_of(" \t");
                    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
                };
                std::string key = trim(raw.substr(i + 1, c - i - 1));
                if (!key.empty()) out.metadata[key] = trim(raw.substr(c + 1));
            }
            continue;
        }
        if (stage == 0) {
            out.ring = detail::parse_ring_line(raw, line);
            stage = 1;
        } else if (stage == 1) {
            std::vector<int> cols;
            std::vector<std::string> t = detail::split_ws(raw, cols);
            if (t.size() != 1 || t[0] != "ideal")
                throw ParseError("expected the keyword 'ideal' after the ring header", line,
                                 cols.empty() ? 1 : cols[0]);
            stage = 2;
        } else {
            out.gens.push_back(detail::parse_poly_line(raw, line, out.ring));
        }
    }
    if (stage == 0) throw ParseError("missing ring header", line + 1, 1);
    if (stage == 1) throw ParseError("missing 'ideal' section", line + 1, 1);
    if (out.gens.empty())
        throw ParseError("empty generator list: the zero ideal defines no subscheme", line + 1, 1);
    return out;
}

inline IdealFile parse_ideal_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ideal_text(buf.str());
}

inline std::string ideal_file_text(const PolyRing& r, const std::vector<Polynomial>& gens) {
    std::ostringstream os;
    os << "ring p " << r.field.p << " vars";
    for (int i = 0; i < r.nvars; ++i) os << " x" << i;
    os << "\nideal\n";
    for (const Polynomial& g : gens) os << g.str() << "\n";
    return os.str();
}

/* Is the ideal saturated, and if not, what is its saturation? */
struct SaturationStatus {
    bool saturated = true;
    std::vector<Polynomial> saturation;
};

inline SaturationStatus saturation_status(const PolyRing& r, const std::vector<Polynomial>& gens) {
    SaturationResult s = saturate_by_maximal(ideal_ambient(r), wrap_ideal(gens));
    return {s.steps == 0, ideal_min_gens(r, unwrap_ideal(s.gens))};
}

}  // namespace buchsbaum
