#pragma once

/**
 * @file expr.hpp
 * @brief A small expression language for scalar functions of one variable.
 *
 * Grammar (lowest to highest precedence):
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := '-' unary | power
 *     power   := primary ('^' unary)?          right-associative
 *     primary := number | 'x' | func '(' expr ')' | '(' expr ')'
 *     func    := exp | ln | sqrt | sin | cos
 *
 * Parsed trees are immutable. Evaluation runs over a flattened postfix
 * program, either in plain doubles or in forward-mode dual numbers.
 * Leaving the natural domain (ln of a non-positive value, division by zero,
 * a non-finite intermediate) throws DomainError; NaN never escapes.
 */

#include "hhf/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hhf {

/// Value and derivative with respect to x.
struct Dual {
    double value = 0.0;
    double deriv = 0.0;
};

class Expr {
public:
    enum class Kind { constant, variable, negate, add, sub, mul, div, pow, exp, ln, sqrt, sin, cos };

    struct Node {
        Kind kind;
        double value = 0.0;  // constants only
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    static Expr parse(std::string_view text);

    static Expr constant(double c) { return Expr(std::make_shared<const Node>(Node{Kind::constant, c, {}, {}})); }
    static Expr variable() { return Expr(std::make_shared<const Node>(Node{Kind::variable, 0.0, {}, {}})); }
    static Expr unary(Kind k, const Expr& arg) { return Expr(std::make_shared<const Node>(Node{k, 0.0, arg.root_, {}})); }
    static Expr binary(Kind k, const Expr& l, const Expr& r) {
        return Expr(std::make_shared<const Node>(Node{k, 0.0, l.root_, r.root_}));
    }

    double operator()(double x) const { return run<double>(x); }
    Dual dual(double x) const { return run<Dual>(x); }

    /// Canonical fully parenthesized infix; parse(to_string()) reproduces the tree.
    std::string to_string() const {
        std::string out;
        write(*root_, out);
        return out;
    }

    const Node& root() const { return *root_; }

    friend bool operator==(const Expr& a, const Expr& b) { return same(*a.root_, *b.root_); }

private:
    struct Instr {
        Kind kind;
        double value;
    };

    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {
        std::size_t depth = 0;
        flatten(*root_, depth);
    }

    void flatten(const Node& n, std::size_t& depth) {
        if (n.lhs) flatten(*n.lhs, depth);
        if (n.rhs) flatten(*n.rhs, depth);
        program_.push_back({n.kind, n.value});
        switch (n.kind) {
        case Kind::constant:
        case Kind::variable: ++depth; break;
        case Kind::add:
        case Kind::sub:
        case Kind::mul:
        case Kind::div:
        case Kind::pow: --depth; break;
        default: break;
        }
        max_depth_ = std::max(max_depth_, depth);
    }

    template <class T>
    T run(double x) const;

    static bool same(const Node& a, const Node& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == Kind::constant) return a.value == b.value;
        if (bool(a.lhs) != bool(b.lhs) || bool(a.rhs) != bool(b.rhs)) return false;
        if (a.lhs && !same(*a.lhs, *b.lhs)) return false;
        if (a.rhs && !same(*a.rhs, *b.rhs)) return false;
        return true;
    }

    static void write(const Node& n, std::string& out);

    std::shared_ptr<const Node> root_;
    std::vector<Instr> program_;
    std::size_t max_depth_ = 0;
};

namespace detail {

inline double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
}

inline bool integral_exponent(double e) { return e == std::nearbyint(e) && std::abs(e) <= 1024.0; }

// Repeated squaring; exact for small integer exponents where std::pow may not be.
inline double ipow(double base, long n) {
    if (n < 0) {
        if (base == 0.0) throw DomainError("division by zero in negative integer power");
        return 1.0 / ipow(base, -n);
    }
    double result = 1.0;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

inline double apply(Expr::Kind k, double a, double b) {
    using K = Expr::Kind;
    switch (k) {
    case K::negate: return -a;
    case K::add: return a + b;
    case K::sub: return a - b;
    case K::mul: return a * b;
    case K::div:
        if (b == 0.0) throw DomainError("division by zero");
        return a / b;
    case K::pow:
        if (integral_exponent(b)) return ipow(a, static_cast<long>(b));
        if (!(a > 0.0)) throw DomainError("non-integer power of a non-positive base");
        return std::pow(a, b);
    case K::exp: return std::exp(a);
    case K::ln:
        if (!(a > 0.0)) throw DomainError("ln of a non-positive value");
        return std::log(a);
    case K::sqrt:
        if (a < 0.0) throw DomainError("sqrt of a negative value");
        return std::sqrt(a);
    case K::sin: return std::sin(a);
    case K::cos: return std::cos(a);
    default: return a;
    }
}

inline Dual apply(Expr::Kind k, Dual a, Dual b) {
    using K = Expr::Kind;
    switch (k) {
    case K::negate: return {-a.value, -a.deriv};
    case K::add: return {a.value + b.value, a.deriv + b.deriv};
    case K::sub: return {a.value - b.value, a.deriv - b.deriv};
    case K::mul: return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
    case K::div: {
        if (b.value == 0.0) throw DomainError("division by zero");
        const double q = a.value / b.value;
        return {q, (a.deriv - q * b.deriv) / b.value};
    }
    case K::pow: {
        if (b.deriv == 0.0 && integral_exponent(b.value)) {
            const long n = static_cast<long>(b.value);
            if (n == 0) return {1.0, 0.0};
            return {ipow(a.value, n), static_cast<double>(n) * ipow(a.value, n - 1) * a.deriv};
        }
        if (!(a.value > 0.0)) throw DomainError("non-integer power of a non-positive base");
        const double v = std::pow(a.value, b.value);
        const double d = b.deriv == 0.0 ? b.value * std::pow(a.value, b.value - 1.0) * a.deriv
                                        : v * (b.deriv * std::log(a.value) + b.value * a.deriv / a.value);
        return {v, d};
    }
    case K::exp: {
        const double e = std::exp(a.value);
        return {e, e * a.deriv};
    }
    case K::ln:
        if (!(a.value > 0.0)) throw DomainError("ln of a non-positive value");
        return {std::log(a.value), a.deriv / a.value};
    case K::sqrt: {
        if (a.value < 0.0) throw DomainError("sqrt of a negative value");
        const double s = std::sqrt(a.value);
        if (s == 0.0) {
            if (a.deriv == 0.0) return {0.0, 0.0};
            throw DomainError("sqrt is not differentiable at 0");
        }
        return {s, 0.5 * a.deriv / s};
    }
    case K::sin: return {std::sin(a.value), std::cos(a.value) * a.deriv};
    case K::cos: return {std::cos(a.value), -std::sin(a.value) * a.deriv};
    default: return a;
    }
}

inline double finite_or_throw(double v) { return checked(v, "expression"); }
inline Dual finite_or_throw(Dual v) {
    checked(v.value, "expression");
    checked(v.deriv, "derivative");
    return v;
}

inline bool is_binary(Expr::Kind k) {
    using K = Expr::Kind;
    return k == K::add || k == K::sub || k == K::mul || k == K::div || k == K::pow;
}

} // namespace detail

template <class T>
T Expr::run(double x) const {
    constexpr std::size_t inline_depth = 64;
    std::array<T, inline_depth> fixed{};
    std::vector<T> heap;
    T* stack = fixed.data();
    if (max_depth_ > inline_depth) {
        heap.resize(max_depth_);
        stack = heap.data();
    }
    std::size_t top = 0;
    for (const Instr& in : program_) {
        switch (in.kind) {
        case Kind::constant:
            if constexpr (std::is_same_v<T, Dual>) stack[top++] = Dual{in.value, 0.0};
            else stack[top++] = in.value;
            break;
        case Kind::variable:
            if constexpr (std::is_same_v<T, Dual>) stack[top++] = Dual{x, 1.0};
            else stack[top++] = x;
            break;
        default:
            if (detail::is_binary(in.kind)) {
                const T rhs = stack[--top];
                stack[top - 1] = detail::finite_or_throw(detail::apply(in.kind, stack[top - 1], rhs));
            } else {
                stack[top - 1] = detail::finite_or_throw(detail::apply(in.kind, stack[top - 1], T{}));
            }
        }
    }
    return stack[0];
}

inline void Expr::write(const Node& n, std::string& out) {
    switch (n.kind) {
    case Kind::constant: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", std::abs(n.value));
        if (std::signbit(n.value)) {
            out += "(-";
            out += buf;
            out += ')';
        } else {
            out += buf;
        }
        return;
    }
    case Kind::variable: out += 'x'; return;
    case Kind::negate:
        out += "(-";
        write(*n.lhs, out);
        out += ')';
        return;
    case Kind::exp:
    case Kind::ln:
    case Kind::sqrt:
    case Kind::sin:
    case Kind::cos: {
        static constexpr const char* names[] = {"exp", "ln", "sqrt", "sin", "cos"};
        out += names[static_cast<int>(n.kind) - static_cast<int>(Kind::exp)];
        out += '(';
        write(*n.lhs, out);
        out += ')';
        return;
    }
    default: {
        static constexpr char ops[] = {'+', '-', '*', '/', '^'};
        out += '(';
        write(*n.lhs, out);
        out += ' ';
        out += ops[static_cast<int>(n.kind) - static_cast<int>(Kind::add)];
        out += ' ';
        write(*n.rhs, out);
        out += ')';
    }
    }
}

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("empty expression", 0);
        Expr e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail_unexpected();
        return e;
    }

private:
    using K = Expr::Kind;

    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            skip_space();
            if (accept('+')) lhs = Expr::binary(K::add, lhs, parse_product());
            else if (accept('-')) lhs = Expr::binary(K::sub, lhs, parse_product());
            else return lhs;
        }
    }

    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            skip_space();
            if (accept('*')) lhs = Expr::binary(K::mul, lhs, parse_unary());
            else if (accept('/')) lhs = Expr::binary(K::div, lhs, parse_unary());
            else return lhs;
        }
    }

    Expr parse_unary() {
        skip_space();
        if (accept('-')) return Expr::unary(K::negate, parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        skip_space();
        if (accept('^')) return Expr::binary(K::pow, base, parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_space();
        if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            skip_space();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail_unexpected();
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec != std::errc() || ptr == first) throw ParseError("malformed number", start);
        pos_ += static_cast<std::size_t>(ptr - first);
        return Expr::constant(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return Expr::variable();

        K kind;
        if (name == "exp") kind = K::exp;
        else if (name == "ln") kind = K::ln;
        else if (name == "sqrt") kind = K::sqrt;
        else if (name == "sin") kind = K::sin;
        else if (name == "cos") kind = K::cos;
        else throw ParseError("unknown identifier '" + std::string(name) + "'", start);

        skip_space();
        if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
        Expr arg = parse_sum();
        skip_space();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return Expr::unary(kind, arg);
    }

    [[noreturn]] void fail_unexpected() {
        throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Expr Expr::parse(std::string_view text) { return detail::Parser(text).parse_all(); }

inline Expr parse(std::string_view text) { return Expr::parse(text); }
inline double eval(const Expr& e, double x) { return e(x); }
inline Dual eval_dual(const Expr& e, double x) { return e.dual(x); }
inline std::string serialize(const Expr& e) { return e.to_string(); }

} // namespace hhf
