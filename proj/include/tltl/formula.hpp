#pragma once

// TLTL abstract syntax.
//
// Formulas are hash-consed: structurally identical formulas share a single
// node, so equality is pointer equality and every node has a stable integer
// id. Nodes live for the lifetime of the process and are never mutated, which
// makes Formula handles safe to share between threads.
//
// Only the core grammar is represented (atomic, not, or, next, until). The
// derived connectives are provided as builder functions that desugar on the
// spot, so the size of a formula is always the size of its desugared tree.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tltl {

enum class Kind : std::uint8_t {
    True,
    False,
    Prop,
    Dynamic,  // x < y | x = y
    Static,   // x < u | x = u | x > u
    Not,
    Or,
    Next,
    Until,
};

enum class Rel : std::uint8_t { Lt, Eq, Gt };

const char* rel_symbol(Rel r);

/// u ::= t + c | c
struct TimeTerm {
    std::string var;  // empty for a pure constant
    std::int64_t constant = 0;

    bool is_constant() const { return var.empty(); }
    friend bool operator==(const TimeTerm&, const TimeTerm&) = default;
    friend auto operator<=>(const TimeTerm&, const TimeTerm&) = default;
};

std::string to_string(const TimeTerm& u);

namespace detail {
struct Node;
}

class Formula {
public:
    Formula() = default;

    Kind kind() const;
    std::uint32_t id() const;

    /// Proposition name (Prop only).
    const std::string& name() const;
    /// Relation (Dynamic and Static only). Dynamic never carries Gt.
    Rel rel() const;
    /// Compared term (Static only).
    const TimeTerm& term() const;

    /// Operand of Not/Next, left operand of Or/Until.
    Formula lhs() const;
    /// Right operand of Or/Until.
    Formula rhs() const;

    bool is_constraint() const { return kind() == Kind::Dynamic || kind() == Kind::Static; }
    bool valid() const { return node_ != nullptr; }

    /// Number of nodes of the (desugared) syntax tree.
    std::size_t size() const;

    friend bool operator==(Formula a, Formula b) { return a.node_ == b.node_; }
    friend bool operator<(Formula a, Formula b) { return a.id() < b.id(); }

private:
    explicit Formula(const detail::Node* n) : node_(n) {}
    const detail::Node* node_ = nullptr;
    friend struct FormulaBuilder;
};

// Core constructors.
Formula make_true();
Formula make_false();
Formula make_prop(const std::string& name);
Formula make_dynamic(Rel rel);  // rel in {Lt, Eq}
Formula make_static(Rel rel, TimeTerm term);
/// Negation with collapse: not(not f) = f, not(true) = false, not(false) = true.
Formula make_not(Formula f);
Formula make_or(Formula a, Formula b);
Formula make_next(Formula f);
Formula make_until(Formula a, Formula b);

// Derived connectives (desugared immediately).
Formula make_and(Formula a, Formula b);
Formula make_implies(Formula a, Formula b);
Formula make_iff(Formula a, Formula b);
Formula make_eventually(Formula f);  // true U f
Formula make_always(Formula f);      // not(true U not f)
Formula make_le(TimeTerm term);      // x < u | x = u
Formula make_ge(TimeTerm term);      // x > u | x = u
Formula make_dynamic_le();           // x < y | x = y

inline Formula negate(Formula f) { return make_not(f); }

/// Timing variables in order of first occurrence (left-to-right, depth first).
std::vector<std::string> timing_variables(Formula f);
/// Propositions in order of first occurrence.
std::vector<std::string> propositions(Formula f);

/// A closed quantified formula: forall t1 ... tk. body
struct QuantifiedFormula {
    std::vector<std::string> bound_vars;
    Formula body;
};

/// Pretty printer; the output is accepted by parse() and re-parses to the same
/// formula.
std::string to_string(Formula f);
std::string to_string(const QuantifiedFormula& q);

}  // namespace tltl

template <>
struct std::hash<tltl::Formula> {
    std::size_t operator()(tltl::Formula f) const noexcept { return f.id(); }
};
