#pragma once
// Translation of TLTL into the monadic second-order theory of timeout state
// sequences, with an ASCII printer/parser, a simplifier, alpha-equivalence and
// a bounded evaluator over lasso witnesses.
//
// Text syntax:
//
//   phi ::= phi "->" phi | phi "|" phi | phi "&" phi | "!" phi | "(" phi ")"
//         | "true" | "false" | name "(" idx ")" | val rel val
//         | ("forall" | "exists") v ["in" "N" | "in" "T" | ">=" idx | "in" "[" idx "," idx ")"] "." phi
//   idx ::= v | v "+" n | n
//   val ::= name "(" idx ")" ["+" n] | v ["+" n] | n
//   rel ::= "<" | "<=" | "=" | "!=" | ">=" | ">"
//
// f(i) is the clock, g(i) the minimum timeout; any other applied name inside a
// comparison is a timing function.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tltl/formula.hpp"
#include "tltl/witness.hpp"

namespace tltl::mso {

/// var + offset, or a bare constant when var is empty.
struct IndexTerm {
    std::string var;
    std::int64_t offset = 0;

    friend bool operator==(const IndexTerm&, const IndexTerm&) = default;
};

struct ValueTerm {
    enum class Fn { Clock, Timeout, Timing, Const, Var };
    Fn fn = Fn::Const;
    std::string name;  // timing function or value variable
    IndexTerm at;      // argument of Clock, Timeout, Timing
    std::int64_t offset = 0;

    friend bool operator==(const ValueTerm&, const ValueTerm&) = default;
};

enum class MRel { Lt, Le, Eq, Ne, Ge, Gt };

struct Node;
using MFormula = std::shared_ptr<const Node>;

struct Node {
    enum class Kind {
        True, False, Pred, Cmp, Not, And, Or, Implies,
        Forall, Exists,        // index quantifiers, optionally bounded
        ForallNat, ExistsNat,  // value quantifiers over N
        ForallFun, ExistsFun,  // over timing functions
    };
    Kind kind = Kind::True;
    std::string name;  // predicate or bound variable
    IndexTerm at;      // predicate argument
    ValueTerm lhs, rhs;
    MRel rel = MRel::Eq;
    std::optional<IndexTerm> lower, upper;  // [lower, upper)
    std::vector<MFormula> kids;
};

MFormula mk_true();
MFormula mk_false();
MFormula mk_pred(std::string name, IndexTerm at);
MFormula mk_cmp(ValueTerm lhs, MRel rel, ValueTerm rhs);
MFormula mk_not(MFormula a);
MFormula mk_and(std::vector<MFormula> kids);
MFormula mk_or(std::vector<MFormula> kids);
MFormula mk_implies(MFormula a, MFormula b);
MFormula mk_quant(Node::Kind kind, std::string var, MFormula body, std::optional<IndexTerm> lower = {},
                  std::optional<IndexTerm> upper = {});

struct MSODocument {
    std::string text;
    std::vector<std::string> free_predicates;            // one per proposition
    std::vector<std::string> free_functions;             // f, g, then timing functions
    std::map<std::string, std::string> timing_function;  // timing variable -> function name
    MFormula formula;                                    // the whole translation
    MFormula body;                                       // Tr_0 of the body
};

/// Tr(qf): forall i. forall t in T. [divergence & step shape & initiality &
/// constancy & Tr_0(body)].
MSODocument translate(const QuantifiedFormula& qf);

std::string to_text(const MFormula& f);

class MsoParseError : public std::runtime_error {
public:
    MsoParseError(std::size_t pos, const std::string& msg) : std::runtime_error(msg), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

MFormula parse_mso(const std::string& text);

/// Negation normal form with constant folding, flattened and sorted
/// connectives, (a < b | a = b) merged into a <= b, unused quantifiers dropped.
MFormula simplify(const MFormula& f);

/// One-point rule for timing functions: forall t. (t(_) != e | R) becomes
/// R[t := e], pushing the quantifier through universal index quantifiers and
/// conjunctions first. Simplifies before and after.
MFormula eliminate_timing(const MFormula& f);

/// The body translation closed over its timing functions, with the timing
/// functions eliminated where the one-point rule applies.
MFormula core(const MSODocument& doc);

/// Canonical text with bound variables renamed by binding depth.
std::string canonical(const MFormula& f);

bool alpha_equivalent(const MFormula& a, const MFormula& b);

struct NodeCounts {
    std::size_t exists = 0, forall = 0, preds = 0, cmps = 0;
    std::int64_t max_offset = 0;
};
NodeCounts count_nodes(const MFormula& f);

/// Interpretation of f, g, the timing functions and the predicates taken from
/// a lasso witness. Index quantifiers range over [lo, lo + W) where W covers
/// the stabilising prefix plus enough laps for one time unit of drift; value
/// quantifiers over N range up to the ceiling of the clock over one lap.
struct BoundedEvaluator {
    BoundedEvaluator(const TimedWitness& w, std::size_t stable_prefix, std::map<std::string, std::string> timing_fn);

    bool holds(const MFormula& f);

    std::size_t window = 0;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Bounded truth of doc.formula on w.
bool evaluate_bounded(const MSODocument& doc, const QuantifiedFormula& qf, const TimedWitness& w);

}  // namespace tltl::mso
