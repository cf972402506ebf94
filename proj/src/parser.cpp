#include "tltl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <vector>

namespace tltl {

const char* to_string(ParseErrorKind k) {
    switch (k) {
        case ParseErrorKind::SyntaxError: return "SyntaxError";
        case ParseErrorKind::IllegalConstraint: return "IllegalConstraint";
        case ParseErrorKind::NegativeConstant: return "NegativeConstant";
    }
    return "?";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t pos, const std::string& msg)
    : std::runtime_error(std::string(to_string(kind)) + " at " + std::to_string(pos) + ": " + msg),
      kind_(kind),
      pos_(pos) {}

namespace {

enum class Tok { Ident, Int, LParen, RParen, Not, And, Or, Implies, Iff, Lt, Le, Eq, Gt, Ge, Plus, Minus, Dot, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

const std::set<std::string, std::less<>> kReserved = {"x", "y", "U", "X", "F", "G", "true", "false", "forall"};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
    while (i < s.size()) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(ch) || ch == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(ch)) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::Int, std::string(s.substr(start, i - start)), start});
            continue;
        }
        struct Op {
            std::string_view text;
            Tok kind;
        };
        static constexpr Op ops[] = {
            {"<->", Tok::Iff}, {"->", Tok::Implies}, {"<=", Tok::Le}, {">=", Tok::Ge}, {"==", Tok::Eq},
            {"&&", Tok::And},  {"||", Tok::Or},      {"<", Tok::Lt},  {">", Tok::Gt},  {"=", Tok::Eq},
            {"&", Tok::And},   {"|", Tok::Or},       {"!", Tok::Not}, {"(", Tok::LParen}, {")", Tok::RParen},
            {"+", Tok::Plus},  {"-", Tok::Minus},    {".", Tok::Dot},
        };
        bool matched = false;
        for (const auto& op : ops) {
            if (starts(op.text)) {
                out.push_back({op.kind, std::string(op.text), start});
                i += op.text.size();
                matched = true;
                break;
            }
        }
        if (!matched)
            throw ParseError(ParseErrorKind::SyntaxError, start, std::string("unexpected character '") + s[i] + "'");
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

bool is_rel(Tok t) { return t == Tok::Lt || t == Tok::Le || t == Tok::Eq || t == Tok::Gt || t == Tok::Ge; }

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    QuantifiedFormula parse_top() {
        QuantifiedFormula q;
        if (peek_ident("forall")) {
            next();
            while (peek().kind == Tok::Ident) {
                const Token& t = next();
                if (kReserved.count(t.text))
                    fail(ParseErrorKind::SyntaxError, t.pos, "reserved word '" + t.text + "' cannot be bound");
                if (std::find(q.bound_vars.begin(), q.bound_vars.end(), t.text) == q.bound_vars.end())
                    q.bound_vars.push_back(t.text);
            }
            if (q.bound_vars.empty()) fail(ParseErrorKind::SyntaxError, peek().pos, "expected timing variable");
            expect(Tok::Dot, "'.'");
        }
        q.body = parse_iff();
        if (peek().kind != Tok::End) fail(ParseErrorKind::SyntaxError, peek().pos, "unexpected '" + peek().text + "'");
        for (const auto& v : timing_variables(q.body))
            if (std::find(q.bound_vars.begin(), q.bound_vars.end(), v) == q.bound_vars.end()) q.bound_vars.push_back(v);
        return q;
    }

private:
    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool peek_ident(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

    [[noreturn]] static void fail(ParseErrorKind k, std::size_t pos, const std::string& msg) {
        throw ParseError(k, pos, msg);
    }

    void expect(Tok k, const char* what) {
        if (peek().kind != k) fail(ParseErrorKind::SyntaxError, peek().pos, std::string("expected ") + what);
        next();
    }

    Formula parse_iff() {
        Formula f = parse_imp();
        while (peek().kind == Tok::Iff) {
            next();
            f = make_iff(f, parse_imp());
        }
        return f;
    }

    Formula parse_imp() {
        Formula f = parse_or();
        if (peek().kind == Tok::Implies) {
            next();
            return make_implies(f, parse_imp());
        }
        return f;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (peek().kind == Tok::Or) {
            next();
            f = make_or(f, parse_and());
        }
        return f;
    }

    Formula parse_and() {
        Formula f = parse_until();
        while (peek().kind == Tok::And) {
            next();
            f = make_and(f, parse_until());
        }
        return f;
    }

    Formula parse_until() {
        Formula f = parse_unary();
        if (peek_ident("U")) {
            next();
            return make_until(f, parse_until());
        }
        return f;
    }

    Formula parse_unary() {
        if (peek().kind == Tok::Not) {
            next();
            return make_not(parse_unary());
        }
        if (peek_ident("X")) {
            next();
            return make_next(parse_unary());
        }
        if (peek_ident("F")) {
            next();
            return make_eventually(parse_unary());
        }
        if (peek_ident("G")) {
            next();
            return make_always(parse_unary());
        }
        return parse_primary();
    }

    Formula parse_primary() {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            Formula f = parse_iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Minus) fail(ParseErrorKind::NegativeConstant, t.pos, "negative constants are not allowed");
        if (is_rel(peek(1).kind) && (t.kind == Tok::Ident || t.kind == Tok::Int)) return parse_constraint();
        if (t.kind == Tok::Ident) {
            if (t.text == "true") return next(), make_true();
            if (t.text == "false") return next(), make_false();
            if (kReserved.count(t.text))
                fail(ParseErrorKind::SyntaxError, t.pos, "unexpected '" + t.text + "'");
            next();
            return make_prop(t.text);
        }
        fail(ParseErrorKind::SyntaxError, t.pos, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    Formula parse_constraint() {
        const Token lhs = next();
        const Token op = next();
        if (lhs.text != "x") {
            fail(ParseErrorKind::IllegalConstraint, lhs.pos,
                 "constraints compare the clock x against y or a time term, got '" + lhs.text + "' on the left");
        }
        const Token& r = peek();
        if (r.kind == Tok::Minus) fail(ParseErrorKind::NegativeConstant, r.pos, "negative constants are not allowed");
        if (r.kind == Tok::Ident && r.text == "y") {
            next();
            switch (op.kind) {
                case Tok::Lt: return make_dynamic(Rel::Lt);
                case Tok::Eq: return make_dynamic(Rel::Eq);
                case Tok::Le: return make_dynamic_le();
                default: fail(ParseErrorKind::IllegalConstraint, op.pos, "x > y is not a valid formula");
            }
        }
        TimeTerm term = parse_term();
        switch (op.kind) {
            case Tok::Lt: return make_static(Rel::Lt, term);
            case Tok::Eq: return make_static(Rel::Eq, term);
            case Tok::Gt: return make_static(Rel::Gt, term);
            case Tok::Le: return make_le(term);
            case Tok::Ge: return make_ge(term);
            default: break;
        }
        fail(ParseErrorKind::SyntaxError, op.pos, "expected relation");
    }

    std::int64_t parse_int(const Token& t) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size())
            fail(ParseErrorKind::SyntaxError, t.pos, "integer out of range");
        return v;
    }

    TimeTerm parse_term() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            next();
            return TimeTerm{"", parse_int(t)};
        }
        if (t.kind != Tok::Ident) fail(ParseErrorKind::SyntaxError, t.pos, "expected time term");
        if (kReserved.count(t.text)) {
            fail(t.text == "x" ? ParseErrorKind::IllegalConstraint : ParseErrorKind::SyntaxError, t.pos,
                 "'" + t.text + "' is not a timing variable");
        }
        next();
        TimeTerm u{t.text, 0};
        if (peek().kind == Tok::Minus) fail(ParseErrorKind::NegativeConstant, peek().pos, "negative constants are not allowed");
        if (peek().kind == Tok::Plus) {
            next();
            const Token& c = peek();
            if (c.kind == Tok::Minus) fail(ParseErrorKind::NegativeConstant, c.pos, "negative constants are not allowed");
            if (c.kind == Tok::Ident)
                fail(ParseErrorKind::IllegalConstraint, c.pos, "sums of timing variables are not allowed");
            if (c.kind != Tok::Int) fail(ParseErrorKind::SyntaxError, c.pos, "expected integer");
            next();
            u.constant = parse_int(c);
        }
        return u;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

QuantifiedFormula parse(std::string_view text) { return Parser(lex(text)).parse_top(); }

Formula parse_formula(std::string_view text) { return parse(text).body; }

}  // namespace tltl
