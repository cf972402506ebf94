#include "tltl/formula.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tltl {

namespace detail {

struct Node {
    Kind kind = Kind::True;
    Rel rel = Rel::Lt;
    std::string name;
    TimeTerm term;
    const Node* lhs = nullptr;
    const Node* rhs = nullptr;
    std::uint32_t id = 0;
    std::size_t size = 1;
};

}  // namespace detail

using detail::Node;

struct FormulaBuilder {
    using Key = std::tuple<int, int, std::string, std::string, std::int64_t, std::int64_t, std::int64_t>;

    std::mutex mu;
    std::deque<Node> nodes;
    std::map<Key, const Node*> index;

    static FormulaBuilder& instance() {
        static FormulaBuilder b;
        return b;
    }

    Formula intern(Node n) {
        Key key{static_cast<int>(n.kind), static_cast<int>(n.rel), n.name, n.term.var, n.term.constant,
                n.lhs ? static_cast<std::int64_t>(n.lhs->id) : -1,
                n.rhs ? static_cast<std::int64_t>(n.rhs->id) : -1};
        std::lock_guard lock(mu);
        auto it = index.find(key);
        if (it != index.end()) return Formula(it->second);
        n.id = static_cast<std::uint32_t>(nodes.size());
        n.size = 1 + (n.lhs ? n.lhs->size : 0) + (n.rhs ? n.rhs->size : 0);
        nodes.push_back(std::move(n));
        const Node* p = &nodes.back();
        index.emplace(std::move(key), p);
        return Formula(p);
    }

    static const Node* raw(Formula f) { return f.node_; }
    static Formula wrap(const Node* n) { return Formula(n); }
};

namespace {

Node node_of(Kind k) {
    Node n;
    n.kind = k;
    return n;
}

const Node& node(const Node* n) {
    if (!n) throw std::logic_error("empty formula handle");
    return *n;
}

Formula unary(Kind k, Formula f) {
    Node n;
    n.kind = k;
    n.lhs = FormulaBuilder::raw(f);
    node(n.lhs);
    return FormulaBuilder::instance().intern(std::move(n));
}

Formula binary(Kind k, Formula a, Formula b) {
    Node n;
    n.kind = k;
    n.lhs = FormulaBuilder::raw(a);
    n.rhs = FormulaBuilder::raw(b);
    node(n.lhs);
    node(n.rhs);
    return FormulaBuilder::instance().intern(std::move(n));
}

}  // namespace

const char* rel_symbol(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Eq: return "=";
        case Rel::Gt: return ">";
    }
    return "?";
}

std::string to_string(const TimeTerm& u) {
    if (u.is_constant()) return std::to_string(u.constant);
    if (u.constant == 0) return u.var;
    return u.var + " + " + std::to_string(u.constant);
}

Kind Formula::kind() const { return node(node_).kind; }
std::uint32_t Formula::id() const { return node(node_).id; }
const std::string& Formula::name() const { return node(node_).name; }
Rel Formula::rel() const { return node(node_).rel; }
const TimeTerm& Formula::term() const { return node(node_).term; }
Formula Formula::lhs() const { return FormulaBuilder::wrap(node(node_).lhs); }
Formula Formula::rhs() const { return FormulaBuilder::wrap(node(node_).rhs); }
std::size_t Formula::size() const { return node(node_).size; }

Formula make_true() { return FormulaBuilder::instance().intern(node_of(Kind::True)); }
Formula make_false() { return FormulaBuilder::instance().intern(node_of(Kind::False)); }

Formula make_prop(const std::string& name) {
    Node n;
    n.kind = Kind::Prop;
    n.name = name;
    return FormulaBuilder::instance().intern(std::move(n));
}

Formula make_dynamic(Rel rel) {
    if (rel == Rel::Gt) throw std::invalid_argument("x > y is not a formula");
    Node n;
    n.kind = Kind::Dynamic;
    n.rel = rel;
    return FormulaBuilder::instance().intern(std::move(n));
}

Formula make_static(Rel rel, TimeTerm term) {
    if (term.constant < 0) throw std::invalid_argument("negative constant in time term");
    Node n;
    n.kind = Kind::Static;
    n.rel = rel;
    n.term = std::move(term);
    return FormulaBuilder::instance().intern(std::move(n));
}

Formula make_not(Formula f) {
    switch (f.kind()) {
        case Kind::Not: return f.lhs();
        case Kind::True: return make_false();
        case Kind::False: return make_true();
        default: return unary(Kind::Not, f);
    }
}

Formula make_or(Formula a, Formula b) { return binary(Kind::Or, a, b); }
Formula make_next(Formula f) { return unary(Kind::Next, f); }
Formula make_until(Formula a, Formula b) { return binary(Kind::Until, a, b); }

Formula make_and(Formula a, Formula b) { return make_not(make_or(make_not(a), make_not(b))); }
Formula make_implies(Formula a, Formula b) { return make_or(make_not(a), b); }
Formula make_iff(Formula a, Formula b) { return make_and(make_implies(a, b), make_implies(b, a)); }
Formula make_eventually(Formula f) { return make_until(make_true(), f); }
Formula make_always(Formula f) { return make_not(make_eventually(make_not(f))); }
Formula make_le(TimeTerm term) { return make_or(make_static(Rel::Lt, term), make_static(Rel::Eq, term)); }
Formula make_ge(TimeTerm term) { return make_or(make_static(Rel::Gt, term), make_static(Rel::Eq, term)); }
Formula make_dynamic_le() { return make_or(make_dynamic(Rel::Lt), make_dynamic(Rel::Eq)); }

namespace {

template <class F>
void walk(Formula f, F&& visit) {
    visit(f);
    switch (f.kind()) {
        case Kind::Not:
        case Kind::Next: walk(f.lhs(), visit); break;
        case Kind::Or:
        case Kind::Until:
            walk(f.lhs(), visit);
            walk(f.rhs(), visit);
            break;
        default: break;
    }
}

}  // namespace

std::vector<std::string> timing_variables(Formula f) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    walk(f, [&](Formula g) {
        if (g.kind() == Kind::Static && !g.term().is_constant() && seen.insert(g.term().var).second)
            out.push_back(g.term().var);
    });
    return out;
}

std::vector<std::string> propositions(Formula f) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    walk(f, [&](Formula g) {
        if (g.kind() == Kind::Prop && seen.insert(g.name()).second) out.push_back(g.name());
    });
    return out;
}

std::string to_string(Formula f) {
    switch (f.kind()) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Prop: return f.name();
        case Kind::Dynamic: return std::string("x ") + rel_symbol(f.rel()) + " y";
        case Kind::Static: return std::string("x ") + rel_symbol(f.rel()) + " " + to_string(f.term());
        case Kind::Not: return "!" + to_string(f.lhs());
        case Kind::Next: return "X " + to_string(f.lhs());
        case Kind::Or: return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
        case Kind::Until: return "(" + to_string(f.lhs()) + " U " + to_string(f.rhs()) + ")";
    }
    return "?";
}

std::string to_string(const QuantifiedFormula& q) {
    if (q.bound_vars.empty()) return to_string(q.body);
    std::string s = "forall";
    for (const auto& v : q.bound_vars) s += " " + v;
    return s + ". " + to_string(q.body);
}

}  // namespace tltl
