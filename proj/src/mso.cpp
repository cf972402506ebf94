#include "tltl/mso.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <set>

namespace tltl::mso {

using K = Node::Kind;

namespace {

MFormula make(Node n) { return std::make_shared<const Node>(std::move(n)); }

Node node(Node::Kind k) {
    Node n;
    n.kind = k;
    return n;
}

bool is_index_quant(K k) { return k == K::Forall || k == K::Exists; }
bool is_quant(K k) {
    return is_index_quant(k) || k == K::ForallNat || k == K::ExistsNat || k == K::ForallFun || k == K::ExistsFun;
}
bool is_universal(K k) { return k == K::Forall || k == K::ForallNat || k == K::ForallFun; }

K dual(K k) {
    switch (k) {
        case K::Forall: return K::Exists;
        case K::Exists: return K::Forall;
        case K::ForallNat: return K::ExistsNat;
        case K::ExistsNat: return K::ForallNat;
        case K::ForallFun: return K::ExistsFun;
        case K::ExistsFun: return K::ForallFun;
        case K::And: return K::Or;
        case K::Or: return K::And;
        default: return k;
    }
}

MRel negate_rel(MRel r) {
    switch (r) {
        case MRel::Lt: return MRel::Ge;
        case MRel::Le: return MRel::Gt;
        case MRel::Eq: return MRel::Ne;
        case MRel::Ne: return MRel::Eq;
        case MRel::Ge: return MRel::Lt;
        case MRel::Gt: return MRel::Le;
    }
    return r;
}

const char* rel_text(MRel r) {
    switch (r) {
        case MRel::Lt: return "<";
        case MRel::Le: return "<=";
        case MRel::Eq: return "=";
        case MRel::Ne: return "!=";
        case MRel::Ge: return ">=";
        case MRel::Gt: return ">";
    }
    return "?";
}

ValueTerm clock(IndexTerm i) { return {ValueTerm::Fn::Clock, "", std::move(i), 0}; }
ValueTerm timeout(IndexTerm i) { return {ValueTerm::Fn::Timeout, "", std::move(i), 0}; }
ValueTerm constant(std::int64_t c) { return {ValueTerm::Fn::Const, "", {}, c}; }
IndexTerm var(std::string v, std::int64_t off = 0) { return {std::move(v), off}; }
IndexTerm zero() { return {}; }

bool index_uses(const IndexTerm& t, const std::string& v) { return !t.var.empty() && t.var == v; }

bool value_uses(const ValueTerm& t, const std::string& v) {
    switch (t.fn) {
        case ValueTerm::Fn::Clock:
        case ValueTerm::Fn::Timeout: return index_uses(t.at, v);
        case ValueTerm::Fn::Timing: return t.name == v || index_uses(t.at, v);
        case ValueTerm::Fn::Var: return t.name == v;
        case ValueTerm::Fn::Const: return false;
    }
    return false;
}

// free occurrence of a variable or timing function name
bool occurs(const std::string& v, const MFormula& f) {
    switch (f->kind) {
        case K::True:
        case K::False: return false;
        case K::Pred: return index_uses(f->at, v);
        case K::Cmp: return value_uses(f->lhs, v) || value_uses(f->rhs, v);
        default: break;
    }
    if (is_quant(f->kind)) {
        if ((f->lower && index_uses(*f->lower, v)) || (f->upper && index_uses(*f->upper, v))) return true;
        if (f->name == v) return false;
    }
    return std::any_of(f->kids.begin(), f->kids.end(), [&](const MFormula& k) { return occurs(v, k); });
}

// ---------------------------------------------------------------------------
// Printing

std::string index_text(const IndexTerm& t, const std::function<std::string(const std::string&)>& rn) {
    if (t.var.empty()) return std::to_string(t.offset);
    std::string s = rn(t.var);
    if (t.offset > 0) s += "+" + std::to_string(t.offset);
    if (t.offset < 0) s += "-" + std::to_string(-t.offset);
    return s;
}

std::string value_text(const ValueTerm& t, const std::function<std::string(const std::string&)>& rn) {
    std::string s;
    switch (t.fn) {
        case ValueTerm::Fn::Const: return std::to_string(t.offset);
        case ValueTerm::Fn::Clock: s = "f(" + index_text(t.at, rn) + ")"; break;
        case ValueTerm::Fn::Timeout: s = "g(" + index_text(t.at, rn) + ")"; break;
        case ValueTerm::Fn::Timing: s = rn(t.name) + "(" + index_text(t.at, rn) + ")"; break;
        case ValueTerm::Fn::Var: s = rn(t.name); break;
    }
    if (t.offset > 0) s += " + " + std::to_string(t.offset);
    if (t.offset < 0) s += " - " + std::to_string(-t.offset);
    return s;
}

int precedence(K k) {
    switch (k) {
        case K::Implies: return 1;
        case K::Or: return 2;
        case K::And: return 3;
        default: return is_quant(k) ? 0 : 4;
    }
}

struct Printer {
    bool canonical = false;
    std::vector<std::pair<std::string, std::string>> scope;  // bound name -> printed name

    std::string rename(const std::string& v) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == v) return it->second;
        return v;
    }

    std::string print(const MFormula& f, int ctx) {
        auto rn = [this](const std::string& v) { return rename(v); };
        std::string s;
        switch (f->kind) {
            case K::True: return "true";
            case K::False: return "false";
            case K::Pred: return f->name + "(" + index_text(f->at, rn) + ")";
            case K::Cmp: s = value_text(f->lhs, rn) + " " + rel_text(f->rel) + " " + value_text(f->rhs, rn); break;
            case K::Not: return "!" + print(f->kids[0], f->kids[0]->kind == K::Cmp ? 5 : 4);
            case K::Implies: s = print(f->kids[0], 2) + " -> " + print(f->kids[1], 1); break;
            case K::And:
            case K::Or: {
                std::vector<std::string> parts;
                std::function<void(const MFormula&)> gather = [&](const MFormula& g) {
                    for (const auto& k : g->kids) {
                        if (canonical && k->kind == g->kind) gather(k);  // associativity
                        else parts.push_back(print(k, precedence(g->kind) + (k->kind == g->kind ? 0 : 1)));
                    }
                };
                gather(f);
                if (canonical) std::sort(parts.begin(), parts.end());
                const char* sep = f->kind == K::And ? " & " : " | ";
                for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
                if (parts.empty()) return f->kind == K::And ? "true" : "false";
                break;
            }
            default: {
                s = is_universal(f->kind) ? "forall " : "exists ";
                std::string lo = f->lower ? index_text(*f->lower, rn) : "", hi = f->upper ? index_text(*f->upper, rn) : "";
                std::string name = canonical ? "_" + std::to_string(scope.size()) : f->name;
                s += name;
                if (f->kind == K::ForallNat || f->kind == K::ExistsNat) s += " in N";
                else if (f->kind == K::ForallFun || f->kind == K::ExistsFun) s += " in T";
                else if (f->upper) s += " in [" + (f->lower ? lo : "0") + ", " + hi + ")";
                else if (f->lower) s += " >= " + lo;
                scope.push_back({f->name, name});
                s += ". " + print(f->kids[0], 0);
                scope.pop_back();
            }
        }
        return precedence(f->kind) < ctx || (f->kind == K::Cmp && ctx > 4) ? "(" + s + ")" : s;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Constructors

MFormula mk_true() {
    static const MFormula t = make(node(K::True));
    return t;
}
MFormula mk_false() {
    static const MFormula f = make(node(K::False));
    return f;
}
MFormula mk_pred(std::string name, IndexTerm at) {
    Node n = node(K::Pred);
    n.name = std::move(name);
    n.at = std::move(at);
    return make(std::move(n));
}
MFormula mk_cmp(ValueTerm lhs, MRel rel, ValueTerm rhs) {
    Node n = node(K::Cmp);
    n.lhs = std::move(lhs);
    n.rel = rel;
    n.rhs = std::move(rhs);
    return make(std::move(n));
}
MFormula mk_not(MFormula a) {
    Node n = node(K::Not);
    n.kids = {std::move(a)};
    return make(std::move(n));
}
MFormula mk_and(std::vector<MFormula> kids) {
    Node n = node(K::And);
    n.kids = std::move(kids);
    return make(std::move(n));
}
MFormula mk_or(std::vector<MFormula> kids) {
    Node n = node(K::Or);
    n.kids = std::move(kids);
    return make(std::move(n));
}
MFormula mk_implies(MFormula a, MFormula b) {
    Node n = node(K::Implies);
    n.kids = {std::move(a), std::move(b)};
    return make(std::move(n));
}
MFormula mk_quant(K kind, std::string v, MFormula body, std::optional<IndexTerm> lower, std::optional<IndexTerm> upper) {
    if (!is_quant(kind)) throw std::invalid_argument("mk_quant needs a quantifier kind");
    Node n = node(kind);
    n.name = std::move(v);
    n.kids = {std::move(body)};
    n.lower = std::move(lower);
    n.upper = std::move(upper);
    return make(std::move(n));
}

std::string to_text(const MFormula& f) { return Printer{}.print(f, 0); }

std::string canonical(const MFormula& f) {
    Printer p;
    p.canonical = true;
    return p.print(f, 0);
}

// ---------------------------------------------------------------------------
// Translation

namespace {

struct Translator {
    std::set<std::string> used;
    std::map<std::string, std::string> timing_fn;
    std::map<std::string, int> counters;

    std::string fresh(const std::string& base) {
        for (;;) {
            int& c = counters[base];
            std::string v = c == 0 ? base : base + std::to_string(c);
            ++c;
            if (used.insert(v).second) return v;
        }
    }

    static MRel rel(Rel r) { return r == Rel::Lt ? MRel::Lt : r == Rel::Eq ? MRel::Eq : MRel::Gt; }

    MFormula at(Formula g, const IndexTerm& i) {
        switch (g.kind()) {
            case Kind::True: return mk_true();
            case Kind::False: return mk_false();
            case Kind::Prop: return mk_pred(g.name(), i);
            case Kind::Dynamic: return mk_cmp(clock(i), rel(g.rel()), timeout(i));
            case Kind::Static: {
                const TimeTerm& u = g.term();
                if (u.is_constant()) return mk_cmp(clock(i), rel(g.rel()), constant(u.constant));
                return mk_cmp(clock(i), rel(g.rel()), {ValueTerm::Fn::Timing, timing_fn.at(u.var), zero(), u.constant});
            }
            case Kind::Not: return mk_not(at(g.lhs(), i));
            case Kind::Or: return mk_or({at(g.lhs(), i), at(g.rhs(), i)});
            case Kind::Next: return at(g.lhs(), {i.var, i.offset + 1});
            case Kind::Until: {
                std::string j = fresh("j"), k = fresh("k");
                MFormula rhs = at(g.rhs(), var(j));
                MFormula before = mk_quant(K::Forall, k, at(g.lhs(), var(k)), i, var(j));
                return mk_quant(K::Exists, j, mk_and({rhs, before}), i);
            }
        }
        throw std::logic_error("unknown formula kind");
    }
};

}  // namespace

MSODocument translate(const QuantifiedFormula& qf) {
    MSODocument doc;
    Translator tr;
    std::vector<std::string> vars = qf.bound_vars;
    for (const auto& v : timing_variables(qf.body))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    doc.free_predicates = propositions(qf.body);
    tr.used = {"i", "l", "m", "f", "g"};
    tr.used.insert(doc.free_predicates.begin(), doc.free_predicates.end());
    tr.used.insert(vars.begin(), vars.end());
    doc.free_functions = {"f", "g"};
    std::set<std::string> taken = {"f", "g"};
    taken.insert(doc.free_predicates.begin(), doc.free_predicates.end());
    for (const auto& v : vars) {
        std::string fn = v;
        while (taken.count(fn)) fn += "'";
        taken.insert(fn);
        tr.used.insert(fn);
        tr.timing_fn[v] = fn;
        doc.free_functions.push_back(fn);
    }
    doc.timing_function = tr.timing_fn;
    doc.body = tr.at(qf.body, zero());

    const IndexTerm i = var("i"), next = var("i", 1);
    std::vector<MFormula> parts;
    // divergence
    parts.push_back(mk_quant(K::ForallNat, "l",
                             mk_quant(K::Exists, "m", mk_cmp(clock(var("m")), MRel::Gt, {ValueTerm::Fn::Var, "l", {}, 0}))));
    // step shape, printed as the three-way disjunction
    parts.push_back(mk_or({
        mk_implies(mk_cmp(clock(i), MRel::Lt, timeout(i)),
                   mk_and({mk_cmp(timeout(next), MRel::Eq, timeout(i)), mk_cmp(clock(next), MRel::Eq, timeout(i))})),
        mk_implies(mk_cmp(clock(i), MRel::Eq, timeout(i)),
                   mk_and({mk_cmp(timeout(next), MRel::Gt, timeout(i)), mk_cmp(clock(next), MRel::Eq, clock(i))})),
        mk_not(mk_cmp(clock(i), MRel::Gt, timeout(i))),
    }));
    // initiality
    parts.push_back(mk_or({
        mk_and({mk_cmp(clock(zero()), MRel::Eq, constant(0)), mk_cmp(timeout(zero()), MRel::Eq, constant(0))}),
        mk_and({mk_cmp(clock(zero()), MRel::Ge, constant(0)), mk_cmp(clock(zero()), MRel::Lt, timeout(zero()))}),
    }));
    // static constancy
    if (!vars.empty()) {
        std::vector<MFormula> same;
        for (const auto& v : vars) {
            const std::string& fn = tr.timing_fn[v];
            same.push_back(mk_cmp({ValueTerm::Fn::Timing, fn, i, 0}, MRel::Eq, {ValueTerm::Fn::Timing, fn, zero(), 0}));
        }
        parts.push_back(same.size() == 1 ? same[0] : mk_and(same));
    }
    parts.push_back(doc.body);
    MFormula inner = mk_and(parts);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) inner = mk_quant(K::ForallFun, tr.timing_fn[*it], inner);
    doc.formula = mk_quant(K::Forall, "i", inner);
    doc.text = to_text(doc.formula);
    return doc;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct MsoParser {
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw MsoParseError(pos, "MSO parse error at offset " + std::to_string(pos) + ": " + msg);
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(const std::string& tok) {
        skip();
        return s.compare(pos, tok.size(), tok) == 0;
    }
    bool accept(const std::string& tok) {
        if (!peek(tok)) return false;
        pos += tok.size();
        return true;
    }
    void expect(const std::string& tok) {
        if (!accept(tok)) fail("expected '" + tok + "'");
    }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
    bool peek_ident() {
        skip();
        return pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
    }
    std::string ident() {
        if (!peek_ident()) fail("expected a name");
        std::size_t b = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        return s.substr(b, pos - b);
    }
    bool keyword(const std::string& kw) {
        skip();
        if (s.compare(pos, kw.size(), kw) != 0) return false;
        if (pos + kw.size() < s.size() && ident_char(s[pos + kw.size()])) return false;
        pos += kw.size();
        return true;
    }
    bool peek_number() {
        skip();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    std::int64_t number() {
        if (!peek_number()) fail("expected a number");
        std::size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return std::stoll(s.substr(b, pos - b));
    }
    std::int64_t offset() {
        if (accept("+")) return number();
        if (peek("->")) return 0;
        if (accept("-")) return -number();
        return 0;
    }
    IndexTerm index() {
        if (peek_number()) return {"", number()};
        std::string v = ident();
        return {v, offset()};
    }
    std::optional<MRel> relation() {
        for (auto [tok, r] : {std::pair{"<=", MRel::Le}, {">=", MRel::Ge}, {"!=", MRel::Ne}, {"<", MRel::Lt},
                              {">", MRel::Gt}, {"=", MRel::Eq}})
            if (accept(tok)) return r;
        return std::nullopt;
    }
    ValueTerm value() {
        if (peek_number()) return constant(number());
        std::string name = ident();
        ValueTerm t;
        if (accept("(")) {
            t.at = index();
            expect(")");
            t.fn = name == "f" ? ValueTerm::Fn::Clock : name == "g" ? ValueTerm::Fn::Timeout : ValueTerm::Fn::Timing;
            if (t.fn == ValueTerm::Fn::Timing) t.name = name;
        } else {
            t.fn = ValueTerm::Fn::Var;
            t.name = name;
        }
        t.offset = offset();
        return t;
    }

    MFormula formula() {
        MFormula a = disjunction();
        if (accept("->")) return mk_implies(a, formula());
        return a;
    }
    MFormula disjunction() {
        std::vector<MFormula> kids{conjunction()};
        while (accept("|")) kids.push_back(conjunction());
        return kids.size() == 1 ? kids[0] : mk_or(kids);
    }
    MFormula conjunction() {
        std::vector<MFormula> kids{unary()};
        while (accept("&")) kids.push_back(unary());
        return kids.size() == 1 ? kids[0] : mk_and(kids);
    }
    MFormula unary() {
        if (peek("!=")) fail("unexpected '!='");
        if (accept("!")) return mk_not(unary());
        bool all = keyword("forall");
        if (all || keyword("exists")) {
            std::string v = ident();
            K kind = all ? K::Forall : K::Exists;
            std::optional<IndexTerm> lo, hi;
            if (keyword("in")) {
                if (keyword("N")) kind = all ? K::ForallNat : K::ExistsNat;
                else if (keyword("T")) kind = all ? K::ForallFun : K::ExistsFun;
                else {
                    expect("[");
                    lo = index();
                    expect(",");
                    hi = index();
                    expect(")");
                }
            } else if (accept(">=")) {
                lo = index();
            }
            expect(".");
            return mk_quant(kind, v, formula(), lo, hi);
        }
        return atom();
    }
    MFormula atom() {
        if (keyword("true")) return mk_true();
        if (keyword("false")) return mk_false();
        if (accept("(")) {
            MFormula f = formula();
            expect(")");
            return f;
        }
        std::size_t start = pos;
        ValueTerm lhs = value();
        if (auto r = relation()) return mk_cmp(lhs, *r, value());
        // a bare application is a predicate
        if (lhs.offset != 0 || lhs.fn == ValueTerm::Fn::Const || lhs.fn == ValueTerm::Fn::Var) {
            pos = start;
            fail("expected a comparison");
        }
        std::string name = lhs.fn == ValueTerm::Fn::Clock ? "f" : lhs.fn == ValueTerm::Fn::Timeout ? "g" : lhs.name;
        return mk_pred(name, lhs.at);
    }
};

}  // namespace

MFormula parse_mso(const std::string& text) {
    MsoParser p{text};
    MFormula f = p.formula();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

// ---------------------------------------------------------------------------
// Simplification

namespace {

MFormula junction(K kind, const std::vector<MFormula>& in) {
    const K unit = kind == K::And ? K::True : K::False;
    const K zero = kind == K::And ? K::False : K::True;
    std::vector<MFormula> kids;
    std::set<std::string> seen;
    std::function<void(const MFormula&)> add = [&](const MFormula& k) {
        if (k->kind == kind) {
            for (const auto& g : k->kids) add(g);
            return;
        }
        if (k->kind == unit) return;
        if (seen.insert(to_text(k)).second) kids.push_back(k);
    };
    for (const auto& k : in) add(k);
    for (const auto& k : kids)
        if (k->kind == zero) return kind == K::And ? mk_false() : mk_true();

    // a < b | a = b  ->  a <= b, and the conjunctive duals
    static const std::vector<std::array<MRel, 3>> or_merge = {
        {MRel::Lt, MRel::Eq, MRel::Le}, {MRel::Gt, MRel::Eq, MRel::Ge}, {MRel::Lt, MRel::Gt, MRel::Ne}};
    static const std::vector<std::array<MRel, 3>> and_merge = {
        {MRel::Le, MRel::Ne, MRel::Lt}, {MRel::Ge, MRel::Ne, MRel::Gt}, {MRel::Le, MRel::Ge, MRel::Eq}};
    const auto& rules = kind == K::Or ? or_merge : and_merge;
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t a = 0; a < kids.size() && !changed; ++a)
            for (std::size_t b = 0; b < kids.size() && !changed; ++b) {
                if (a == b || kids[a]->kind != K::Cmp || kids[b]->kind != K::Cmp) continue;
                if (!(kids[a]->lhs == kids[b]->lhs && kids[a]->rhs == kids[b]->rhs)) continue;
                for (const auto& r : rules)
                    if (kids[a]->rel == r[0] && kids[b]->rel == r[1]) {
                        kids[a] = mk_cmp(kids[a]->lhs, r[2], kids[a]->rhs);
                        kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(b));
                        changed = true;
                        break;
                    }
            }
    }
    if (kids.empty()) return kind == K::And ? mk_true() : mk_false();
    if (kids.size() == 1) return kids[0];
    return kind == K::And ? mk_and(kids) : mk_or(kids);
}

std::optional<IndexTerm> tidy_lower(std::optional<IndexTerm> lo) {
    if (lo && lo->var.empty() && lo->offset <= 0) return std::nullopt;
    return lo;
}

MFormula quantifier(K kind, const std::string& v, MFormula body, std::optional<IndexTerm> lo,
                    std::optional<IndexTerm> hi) {
    lo = tidy_lower(lo);
    const bool may_be_empty = hi.has_value();
    if (body->kind == K::True && (is_universal(kind) || !may_be_empty)) return mk_true();
    if (body->kind == K::False && (!is_universal(kind) || !may_be_empty)) return mk_false();
    if (!may_be_empty && !occurs(v, body)) return body;
    return mk_quant(kind, v, std::move(body), lo, hi);
}

MFormula nnf(const MFormula& f, bool neg) {
    switch (f->kind) {
        case K::True: return neg ? mk_false() : f;
        case K::False: return neg ? mk_true() : f;
        case K::Pred: return neg ? mk_not(f) : f;
        case K::Cmp: return neg ? mk_cmp(f->lhs, negate_rel(f->rel), f->rhs) : f;
        case K::Not: return nnf(f->kids[0], !neg);
        case K::Implies: return nnf(mk_or({mk_not(f->kids[0]), f->kids[1]}), neg);
        case K::And:
        case K::Or: {
            std::vector<MFormula> kids;
            for (const auto& k : f->kids) kids.push_back(nnf(k, neg));
            return junction(neg ? dual(f->kind) : f->kind, kids);
        }
        default:
            return quantifier(neg ? dual(f->kind) : f->kind, f->name, nnf(f->kids[0], neg), f->lower, f->upper);
    }
}

bool binds(const MFormula& f, const std::string& v) {
    if (is_quant(f->kind) && f->name == v) return true;
    return std::any_of(f->kids.begin(), f->kids.end(), [&](const MFormula& k) { return binds(k, v); });
}

// t(_) + d  ->  e + (d - c); nullopt when a binder would capture e
std::optional<MFormula> substitute(const MFormula& f, const std::string& fn, const ValueTerm& e, std::int64_t c) {
    auto sub = [&](ValueTerm t) {
        if (t.fn == ValueTerm::Fn::Timing && t.name == fn) {
            std::int64_t d = t.offset;
            t = e;
            t.offset = e.offset + d - c;
        }
        return t;
    };
    switch (f->kind) {
        case K::Cmp: return mk_cmp(sub(f->lhs), f->rel, sub(f->rhs));
        case K::True:
        case K::False:
        case K::Pred: return f;
        default: break;
    }
    if (is_quant(f->kind)) {
        if (f->name == fn) return f;
        if (value_uses(e, f->name) && occurs(fn, f->kids[0])) return std::nullopt;
    }
    Node n = *f;
    for (auto& k : n.kids) {
        auto s = substitute(k, fn, e, c);
        if (!s) return std::nullopt;
        k = *s;
    }
    return make(std::move(n));
}

MFormula push_timing(const std::string& fn, const MFormula& b) {
    if (!occurs(fn, b)) return b;
    if (b->kind == K::Forall && b->name != fn) {
        return mk_quant(K::Forall, b->name, push_timing(fn, b->kids[0]), b->lower, b->upper);
    }
    if (b->kind == K::And) {
        std::vector<MFormula> kids;
        for (const auto& k : b->kids) kids.push_back(push_timing(fn, k));
        return mk_and(kids);
    }
    if (b->kind == K::Or) {
        for (std::size_t i = 0; i < b->kids.size(); ++i) {
            const MFormula& lit = b->kids[i];
            if (lit->kind != K::Cmp || lit->rel != MRel::Ne) continue;
            for (bool left : {true, false}) {
                const ValueTerm& t = left ? lit->lhs : lit->rhs;
                const ValueTerm& e = left ? lit->rhs : lit->lhs;
                if (t.fn != ValueTerm::Fn::Timing || t.name != fn || value_uses(e, fn)) continue;
                std::vector<MFormula> rest;
                bool ok = true;
                for (std::size_t j = 0; j < b->kids.size() && ok; ++j) {
                    if (j == i) continue;
                    auto s = substitute(b->kids[j], fn, e, t.offset);
                    if (s) rest.push_back(*s);
                    else ok = false;
                }
                if (ok) return mk_or(rest);
            }
        }
    }
    return mk_quant(K::ForallFun, fn, b);
}

MFormula eliminate(const MFormula& f) {
    if (f->kids.empty()) return f;
    Node n = *f;
    for (auto& k : n.kids) k = eliminate(k);
    MFormula g = make(std::move(n));
    if (g->kind == K::ForallFun) return push_timing(g->name, g->kids[0]);
    return g;
}

}  // namespace

MFormula simplify(const MFormula& f) { return nnf(f, false); }

MFormula eliminate_timing(const MFormula& f) { return simplify(eliminate(simplify(f))); }

MFormula core(const MSODocument& doc) {
    MFormula f = doc.body;
    for (auto it = doc.free_functions.rbegin(); it != doc.free_functions.rend(); ++it)
        if (*it != "f" && *it != "g") f = mk_quant(K::ForallFun, *it, f);
    return eliminate_timing(f);
}

bool alpha_equivalent(const MFormula& a, const MFormula& b) { return canonical(simplify(a)) == canonical(simplify(b)); }

NodeCounts count_nodes(const MFormula& f) {
    NodeCounts c;
    std::function<void(const MFormula&)> walk = [&](const MFormula& g) {
        if (g->kind == K::Exists) ++c.exists;
        if (g->kind == K::Forall) ++c.forall;
        if (g->kind == K::Pred) {
            ++c.preds;
            c.max_offset = std::max(c.max_offset, g->at.offset);
        }
        if (g->kind == K::Cmp) {
            ++c.cmps;
            for (const auto* t : {&g->lhs, &g->rhs})
                if (t->fn == ValueTerm::Fn::Clock || t->fn == ValueTerm::Fn::Timeout)
                    c.max_offset = std::max(c.max_offset, t->at.offset);
        }
        for (const auto& k : g->kids) walk(k);
    };
    walk(f);
    return c;
}

// ---------------------------------------------------------------------------
// Bounded evaluation

struct BoundedEvaluator::Impl {
    explicit Impl(const TimedWitness& w) : w(w) {}

    const TimedWitness& w;
    std::map<std::string, std::string> var_of;  // timing function -> variable
    std::vector<TimedState> states;
    std::size_t window = 0;
    std::int64_t value_bound = 0;
    std::map<std::string, std::int64_t> env;

    const TimedState& at(std::int64_t i) {
        if (i < 0) throw std::out_of_range("negative index");
        while (states.size() <= static_cast<std::size_t>(i)) states.push_back(w.at(states.size()));
        return states[static_cast<std::size_t>(i)];
    }
    std::int64_t index(const IndexTerm& t) {
        if (t.var.empty()) return t.offset;
        auto it = env.find(t.var);
        if (it == env.end()) throw std::invalid_argument("unbound index variable " + t.var);
        return it->second + t.offset;
    }
    Rational value(const ValueTerm& t) {
        Rational off(t.offset);
        switch (t.fn) {
            case ValueTerm::Fn::Const: return off;
            case ValueTerm::Fn::Clock: return at(index(t.at)).x + off;
            case ValueTerm::Fn::Timeout: return at(index(t.at)).y + off;
            case ValueTerm::Fn::Timing: {
                auto v = var_of.find(t.name);
                const TimingMap& m = at(index(t.at)).timing;
                auto it = v == var_of.end() ? m.end() : m.find(v->second);
                if (it == m.end()) throw std::invalid_argument("witness has no value for " + t.name);
                return it->second + off;
            }
            case ValueTerm::Fn::Var: {
                auto it = env.find(t.name);
                if (it == env.end()) throw std::invalid_argument("unbound value variable " + t.name);
                return Rational(it->second) + off;
            }
        }
        return off;
    }
    static bool compare(const Rational& a, MRel r, const Rational& b) {
        switch (r) {
            case MRel::Lt: return a < b;
            case MRel::Le: return a <= b;
            case MRel::Eq: return a == b;
            case MRel::Ne: return a != b;
            case MRel::Ge: return a >= b;
            case MRel::Gt: return a > b;
        }
        return false;
    }

    // memo on the values of the variables a node reads
    std::map<const Node*, std::vector<std::string>> free_cache;
    std::map<std::pair<const Node*, std::vector<std::int64_t>>, bool> memo;

    const std::vector<std::string>& free_vars(const MFormula& f) {
        auto it = free_cache.find(f.get());
        if (it != free_cache.end()) return it->second;
        std::vector<std::string> out;
        for (const auto& [v, _] : env)
            if (occurs(v, f)) out.push_back(v);
        return free_cache[f.get()] = out;
    }

    bool eval(const MFormula& f) {
        switch (f->kind) {
            case K::True: return true;
            case K::False: return false;
            case K::Pred: {
                const auto& p = at(index(f->at)).props;
                return std::binary_search(p.begin(), p.end(), f->name);
            }
            case K::Cmp: return compare(value(f->lhs), f->rel, value(f->rhs));
            case K::Not: return !eval(f->kids[0]);
            case K::Implies: return !eval(f->kids[0]) || eval(f->kids[1]);
            case K::And:
                for (const auto& k : f->kids)
                    if (!eval(k)) return false;
                return true;
            case K::Or:
                for (const auto& k : f->kids)
                    if (eval(k)) return true;
                return false;
            case K::ForallFun:
            case K::ExistsFun: return eval(f->kids[0]);  // the witness fixes every timing function
            default: break;
        }
        std::vector<std::int64_t> key;
        for (const auto& v : free_vars(f)) key.push_back(env.at(v));
        auto mk = std::make_pair(f.get(), key);
        if (auto it = memo.find(mk); it != memo.end()) return it->second;

        std::int64_t lo = 0, hi = 0;
        if (f->kind == K::ForallNat || f->kind == K::ExistsNat) {
            hi = value_bound + 1;
        } else {
            lo = f->lower ? std::max<std::int64_t>(0, index(*f->lower)) : 0;
            hi = f->upper ? index(*f->upper) : lo + static_cast<std::int64_t>(window);
        }
        const bool all = is_universal(f->kind);
        auto saved = env.find(f->name) != env.end() ? std::optional<std::int64_t>(env[f->name]) : std::nullopt;
        bool result = all;
        for (std::int64_t v = lo; v < hi; ++v) {
            env[f->name] = v;
            if (eval(f->kids[0]) != all) {
                result = !all;
                break;
            }
        }
        if (saved) env[f->name] = *saved;
        else env.erase(f->name);
        memo[mk] = result;
        return result;
    }
};

BoundedEvaluator::BoundedEvaluator(const TimedWitness& w, std::size_t stable_prefix,
                                   std::map<std::string, std::string> timing_fn)
    : impl_(std::make_shared<Impl>(w)) {
    if (w.cycle.empty()) throw std::invalid_argument("witness has no cycle");
    for (const auto& [v, fn] : timing_fn) impl_->var_of[fn] = v;
    const std::size_t c = w.cycle.size();
    std::size_t laps = 2;
    if (w.shift > 0) laps += static_cast<std::size_t>(ceil_of(Rational(1) / w.shift).numerator());
    window = stable_prefix + laps * c;
    impl_->window = window;
    Rational top(0);
    for (std::size_t i = 0; i < stable_prefix + c; ++i) top = std::max(top, impl_->at(static_cast<std::int64_t>(i)).x);
    impl_->value_bound = ceil_of(top).numerator();
}

bool BoundedEvaluator::holds(const MFormula& f) {
    impl_->memo.clear();
    impl_->free_cache.clear();
    return impl_->eval(f);
}

bool evaluate_bounded(const MSODocument& doc, const QuantifiedFormula& qf, const TimedWitness& w) {
    auto [view, loop] = periodic_view(w, qf.body);
    BoundedEvaluator e(w, loop, doc.timing_function);
    return e.holds(doc.formula);
}

}  // namespace tltl::mso
