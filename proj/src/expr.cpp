#include "starkms/expr.hpp"

#include <cctype>
#include <cstdlib>

#include "starkms/errors.hpp"

namespace starkms
{

namespace
{

struct Token
{
    enum Kind
    {
        number,
        name,
        symbol,
        end
    } kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(const std::string &s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = i;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
                ++i;
            }
            // exponent part: 1e-3
            if (i + 1 < s.size() && (s[i] == 'e' || s[i] == 'E') &&
                (std::isdigit(static_cast<unsigned char>(s[i + 1])) ||
                 ((s[i + 1] == '-' || s[i + 1] == '+') && i + 2 < s.size() &&
                  std::isdigit(static_cast<unsigned char>(s[i + 2]))))) {
                i += 2;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    ++i;
                }
            }
            out.push_back({Token::number, s.substr(start, i - start), start + 1});
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = i;
            while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) {
                ++i;
            }
            out.push_back({Token::name, s.substr(start, i - start), start + 1});
        } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
            out.push_back({Token::symbol, std::string(1, c), i + 1});
            ++i;
        } else {
            throw precondition_error("at column " + std::to_string(i + 1) + ": unexpected character '" +
                                     std::string(1, c) + "'");
        }
    }
    out.push_back({Token::end, "", s.size() + 1});
    return out;
}

// Recursive descent over a value algebra V supplied by Backend.
template <class Backend>
class Parser
{
public:
    using V = typename Backend::Value;

    Parser(const std::string &text, Backend backend) : tokens_(tokenize(text)), b_(std::move(backend)) {}

    V parse()
    {
        V v = expr();
        if (peek().kind != Token::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return v;
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw precondition_error("at column " + std::to_string(peek().column) + ": " + msg);
    }

    const Token &peek() const { return tokens_[pos_]; }
    bool accept(const std::string &sym)
    {
        if (peek().kind == Token::symbol && peek().text == sym) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const std::string &sym)
    {
        if (!accept(sym)) {
            fail("expected '" + sym + "'");
        }
    }
    long integer()
    {
        bool negative = accept("-");
        if (!negative) {
            accept("+");
        }
        if (peek().kind != Token::number || peek().text.find_first_not_of("0123456789") != std::string::npos) {
            fail("expected an integer");
        }
        const long v = std::strtol(tokens_[pos_++].text.c_str(), nullptr, 10);
        return negative ? -v : v;
    }
    const Token &next() { return tokens_[pos_++]; }

    V expr()
    {
        V v = term();
        for (;;) {
            if (accept("+")) {
                v = b_.add(v, term());
            } else if (accept("-")) {
                v = b_.add(v, b_.scale(term(), GaussRational(-1)));
            } else {
                return v;
            }
        }
    }

    V term()
    {
        V v = unary();
        for (;;) {
            if (accept("*")) {
                v = b_.mul(v, unary());
            } else if (accept("/")) {
                const std::size_t col = peek().column;
                const auto c = b_.as_constant(unary());
                if (!c || c->is_zero()) {
                    throw precondition_error("at column " + std::to_string(col) +
                                             ": division only by nonzero constants");
                }
                v = b_.scale(v, GaussRational(1) / *c);
            } else {
                return v;
            }
        }
    }

    V unary()
    {
        if (accept("-")) {
            return b_.scale(unary(), GaussRational(-1));
        }
        if (accept("+")) {
            return unary();
        }
        return power();
    }

    V power()
    {
        V base = atom();
        if (accept("^")) {
            const long k = integer();
            if (k < 0 || k > 64) {
                fail("exponent must be an integer in [0, 64]");
            }
            V out = b_.constant(GaussRational(1));
            for (long j = 0; j < k; ++j) {
                out = b_.mul(out, base);
            }
            return out;
        }
        return base;
    }

    V atom()
    {
        const Token &t = peek();
        if (t.kind == Token::number) {
            ++pos_;
            return b_.constant(GaussRational(parse_rational(t.text)));
        }
        if (accept("(")) {
            V v = expr();
            expect(")");
            return v;
        }
        if (t.kind == Token::name) {
            ++pos_;
            if (t.text == "i") {
                return b_.constant(GaussRational(Rational(0), Rational(1)));
            }
            return b_.name(*this, t);
        }
        fail(t.kind == Token::end ? "unexpected end of expression" : "unexpected '" + t.text + "'");
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Backend b_;
};

struct EuclideanBackend
{
    using Value = ExpPolyFunction;
    std::size_t n;

    Value constant(const GaussRational &c) const { return ExpPolyFunction::constant(n, c); }
    Value add(const Value &a, const Value &b) const { return a + b; }
    Value mul(const Value &a, const Value &b) const { return a * b; }
    Value scale(const Value &a, const GaussRational &c) const { return a * c; }
    std::optional<GaussRational> as_constant(const Value &v) const
    {
        if (!v.is_polynomial() || v.as_polynomial().degree() > 0) {
            return std::nullopt;
        }
        return v.as_polynomial().constant_term();
    }

    template <class P>
    Value name(P &parser, const Token &t) const
    {
        const std::string &s = t.text;
        if (s == "H0") {
            return ExpPolyFunction(PolyFunction::reference_quadratic(n));
        }
        if (s == "exp") {
            parser.expect("(");
            const Value arg = parser.expr();
            parser.expect(")");
            if (!arg.is_polynomial()) {
                throw precondition_error("at column " + std::to_string(t.column) + ": nested exp is not supported");
            }
            const PolyFunction e = arg.as_polynomial();
            if (!e.constant_term().is_zero()) {
                throw precondition_error("at column " + std::to_string(t.column) +
                                         ": exponent must have no constant term (e^c is not exact)");
            }
            return ExpPolyFunction::term(PolyFunction::constant(n, GaussRational(1)), e);
        }
        if ((s[0] == 'q' || s[0] == 'p') && s.size() >= 1) {
            std::size_t idx = 1;
            if (s.size() > 1) {
                if (s.find_first_not_of("0123456789", 1) != std::string::npos) {
                    parser.fail("unknown name '" + s + "'");
                }
                idx = std::stoul(s.substr(1));
            } else if (n != 1) {
                parser.fail("use indexed coordinates (q1, p1, ...) when n > 1");
            }
            if (idx < 1 || idx > n) {
                parser.fail("coordinate '" + s + "' out of range for n = " + std::to_string(n));
            }
            return ExpPolyFunction(s[0] == 'q' ? PolyFunction::q(n, idx - 1) : PolyFunction::p(n, idx - 1));
        }
        parser.fail("unknown name '" + s + "'");
    }
};

void add_mode(TrigPoly &f, const Mode &k, const GaussRational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = f.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            f.erase(it);
        }
    }
}

struct TorusBackend
{
    using Value = TrigPoly;

    Value constant(const GaussRational &c) const
    {
        Value v;
        add_mode(v, {0, 0}, c);
        return v;
    }
    Value add(const Value &a, const Value &b) const
    {
        Value v = a;
        for (const auto &[k, c] : b) {
            add_mode(v, k, c);
        }
        return v;
    }
    Value mul(const Value &a, const Value &b) const
    {
        Value v;
        for (const auto &[k, c] : a) {
            for (const auto &[l, d] : b) {
                add_mode(v, {k.first + l.first, k.second + l.second}, c * d);
            }
        }
        return v;
    }
    Value scale(const Value &a, const GaussRational &c) const
    {
        Value v;
        for (const auto &[k, x] : a) {
            add_mode(v, k, x * c);
        }
        return v;
    }
    std::optional<GaussRational> as_constant(const Value &v) const
    {
        if (v.empty()) {
            return GaussRational(0);
        }
        if (v.size() == 1 && v.begin()->first == Mode{0, 0}) {
            return v.begin()->second;
        }
        return std::nullopt;
    }

    template <class P>
    Mode linear_form(P &parser) const
    {
        Mode k{0, 0};
        bool first = true;
        for (;;) {
            long sign = 1;
            if (parser.accept("-")) {
                sign = -1;
            } else if (!parser.accept("+") && !first) {
                return k;
            }
            long coeff = 1;
            if (parser.peek().kind == Token::number) {
                coeff = parser.integer();
                parser.expect("*");
            }
            const Token &v = parser.next();
            if (v.kind != Token::name || (v.text != "t1" && v.text != "t2")) {
                throw precondition_error("at column " + std::to_string(v.column) + ": expected t1 or t2");
            }
            (v.text == "t1" ? k.first : k.second) += static_cast<int>(sign * coeff);
            first = false;
        }
    }

    template <class P>
    Value name(P &parser, const Token &t) const
    {
        const std::string &s = t.text;
        if (s == "e") {
            parser.expect("(");
            const long k1 = parser.integer();
            parser.expect(",");
            const long k2 = parser.integer();
            parser.expect(")");
            Value v;
            add_mode(v, {static_cast<int>(k1), static_cast<int>(k2)}, GaussRational(1));
            return v;
        }
        if (s == "cos" || s == "sin") {
            parser.expect("(");
            const Mode k = linear_form(parser);
            parser.expect(")");
            Value v;
            const GaussRational half(make_rational(1, 2));
            if (s == "cos") {
                add_mode(v, k, half);
                add_mode(v, {-k.first, -k.second}, half);
            } else {
                // sin x = (e^{ix} − e^{−ix}) / 2i
                add_mode(v, k, GaussRational(Rational(0), make_rational(-1, 2)));
                add_mode(v, {-k.first, -k.second}, GaussRational(Rational(0), make_rational(1, 2)));
            }
            return v;
        }
        parser.fail("unknown name '" + s + "' (torus expressions use e(k1,k2), cos, sin)");
    }
};

} // namespace

ExpPolyFunction parse_exppoly(const std::string &text, std::size_t n)
{
    return Parser<EuclideanBackend>(text, EuclideanBackend{n}).parse();
}

PolyFunction parse_poly(const std::string &text, std::size_t n)
{
    const ExpPolyFunction f = parse_exppoly(text, n);
    if (!f.is_polynomial()) {
        throw precondition_error("expected a polynomial, got exponential factors in '" + text + "'");
    }
    return f.as_polynomial();
}

TrigPoly parse_trig(const std::string &text)
{
    return Parser<TorusBackend>(text, TorusBackend{}).parse();
}

FourierFunction to_fourier(const TrigPoly &f, int band)
{
    FourierFunction out(band);
    for (const auto &[k, c] : f) {
        if (std::abs(k.first) > band || std::abs(k.second) > band) {
            throw precondition_error("mode (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                                     ") exceeds band " + std::to_string(band));
        }
        out.set_coefficient(k.first, k.second, c.to_complex());
    }
    return out;
}

int trig_band(const TrigPoly &f)
{
    int b = 0;
    for (const auto &[k, c] : f) {
        b = std::max({b, std::abs(k.first), std::abs(k.second)});
    }
    return b;
}

} // namespace starkms
