#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netpoly/errors.hpp"
#include "netpoly/nat.hpp"

namespace netpoly {

/// x^i y^j.
struct Monomial {
    Nat i;  ///< x-exponent
    Nat j;  ///< y-exponent

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lexicographic order on (i + j, i), largest first. Since i + j and i
/// determine j, this is a strict total order on monomials.
struct DescendingTermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const Nat da = a.i + a.j;
        const Nat db = b.i + b.j;
        if (da != db) return da > db;
        return a.i > b.i;
    }
};

/// Sparse element of N[x,y]. No stored coefficient is zero; the zero
/// polynomial is the empty mapping.
class Polynomial {
public:
    using Terms = std::map<Monomial, Nat, DescendingTermOrder>;
    using const_iterator = Terms::const_iterator;

    Polynomial() = default;

    Polynomial(std::initializer_list<std::pair<Monomial, Nat>> terms) {
        for (const auto& [m, c] : terms) add_term(m, c);
    }

    static Polynomial constant(const Nat& c) {
        Polynomial p;
        p.add_term(Monomial{0, 0}, c);
        return p;
    }

    static Polynomial one() { return constant(1); }

    /// Accumulate c * x^i y^j. Zero contributions are dropped.
    void add_term(const Monomial& m, const Nat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) it->second += c;
    }

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const Terms& terms() const noexcept { return terms_; }
    const_iterator begin() const noexcept { return terms_.begin(); }
    const_iterator end() const noexcept { return terms_.end(); }

    Nat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Nat(0) : it->second;
    }

    Nat constant_term() const { return coefficient(Monomial{0, 0}); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// Union of the binary supports of every exponent of P.
inline BitSet tau_poly(const Polynomial& p) {
    BitSet out;
    for (const auto& [m, c] : p) {
        out = set_union(out, tau_nat(m.i));
        out = set_union(out, tau_nat(m.j));
    }
    return out;
}

inline Polynomial add(const Polynomial& p, const Polynomial& q) {
    Polynomial out = p;
    for (const auto& [m, c] : q) out.add_term(m, c);
    return out;
}

/// Convolution product. Exponents add as full integers, carries included.
inline Polynomial mul(const Polynomial& p, const Polynomial& q) {
    Polynomial out;
    for (const auto& [m1, c1] : p) {
        for (const auto& [m2, c2] : q) out.add_term(Monomial{m1.i + m2.i, m1.j + m2.j}, c1 * c2);
    }
    return out;
}

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }

/// True iff the binary supports of P and Q do not meet, i.e. P * Q is carry-free.
inline bool disjoint_support(const Polynomial& p, const Polynomial& q) {
    return disjoint(tau_poly(p), tau_poly(q));
}

/// Total order: term lists (largest monomial first) compared lexicographically
/// by (i, j, coefficient).
inline std::strong_ordering compare(const Polynomial& p, const Polynomial& q) {
    auto a = p.begin();
    auto b = q.begin();
    for (; a != p.end() && b != q.end(); ++a, ++b) {
        if (a->first.i != b->first.i) return a->first.i < b->first.i ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a->first.j != b->first.j) return a->first.j < b->first.j ? std::strong_ordering::less : std::strong_ordering::greater;
        if (a->second != b->second) return a->second < b->second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a == p.end() && b == q.end()) return std::strong_ordering::equal;
    return a == p.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

/// Strict weak ordering adaptor over compare, for sorting.
struct PolynomialLess {
    bool operator()(const Polynomial& p, const Polynomial& q) const { return compare(p, q) < 0; }
};

/// Canonical text: terms in descending graded-lex order joined by " + ",
/// unit coefficients and unit exponents elided, "0" for the zero polynomial.
inline std::string print_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : p) {
        if (!out.empty()) out += " + ";
        std::vector<std::string> parts;
        const bool constant = m.i.is_zero() && m.j.is_zero();
        if (constant || c != 1) parts.push_back(c.str());
        if (!m.i.is_zero()) parts.push_back(m.i == 1 ? std::string("x") : "x^" + m.i.str());
        if (!m.j.is_zero()) parts.push_back(m.j == 1 ? std::string("y") : "y^" + m.j.str());
        for (std::size_t k = 0; k < parts.size(); ++k) {
            if (k) out += '*';
            out += parts[k];
        }
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Polynomial parse() {
        Polynomial out;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        parse_term(out);
        while (true) {
            skip_ws();
            if (at_end()) break;
            if (peek() != '+') fail(std::string("unexpected character '") + peek() + "'");
            ++pos_;
            parse_term(out);
        }
        return out;
    }

private:
    void parse_term(Polynomial& out) {
        skip_ws();
        Nat coeff = 1;
        Monomial m{0, 0};
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_number();
            skip_ws();
            if (at_end() || peek() != '*') {
                out.add_term(m, coeff);
                return;
            }
            ++pos_;
        }
        parse_factor(m);
        while (true) {
            skip_ws();
            if (at_end() || peek() != '*') break;
            ++pos_;
            parse_factor(m);
        }
        out.add_term(m, coeff);
    }

    void parse_factor(Monomial& m) {
        skip_ws();
        if (at_end()) fail("expected 'x' or 'y'");
        const char var = peek();
        if (var != 'x' && var != 'y') fail(std::string("expected 'x' or 'y', found '") + var + "'");
        ++pos_;
        Nat exponent = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_ws();
            exponent = parse_number();
        }
        (var == 'x' ? m.i : m.j) += exponent;
    }

    Nat parse_number() {
        if (at_end()) fail("expected a natural number");
        if (peek() == '-') fail("negative literals are not allowed");
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail("expected a natural number");
        if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E')) fail("non-integer literals are not allowed");
        return parse_nat(text_.substr(start, pos_ - start));
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse the ASCII grammar
///   poly := term ('+' term)*,  term := nat | nat '*' factors | factors,
///   factors := factor ('*' factor)*,  factor := ('x'|'y') ('^' nat)?
/// Repeated variables within a term multiply. Throws ParseError with position.
inline Polynomial parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace netpoly
