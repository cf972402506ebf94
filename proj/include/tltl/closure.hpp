#pragma once

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tltl/formula.hpp"

namespace tltl {

/// Splits a formula into a positive representative and a polarity.
///
/// Negations are peeled off, `false` is the negative of `true`, and a next
/// formula is represented through its operand, so that `!X a` and `X !a` land
/// on the same class `X a` with negative polarity. Two formulas of a closure
/// are complementary exactly when they share a base and differ in polarity.
struct Literal {
    Formula base;
    bool positive = true;
};

Literal canon(Formula f);

/// Fischer-Ladner closure.
///
/// `members()` holds every formula in both polarities, the way the closure
/// rules generate them. A formula and its negation form one class; `classes()`
/// lists the positive bases and `class_count()` is the quantity the
/// 7|f|+3 bound speaks about.
class Closure {
public:
    Closure() = default;

    /// Least set containing f and closed under rules c1-c12.
    static Closure of(Formula f);
    /// Least closed set containing all roots; origin() is the first root.
    static Closure of(const std::vector<Formula>& roots);

    Formula origin() const { return origin_; }

    /// Members ordered by (size, id).
    const std::vector<Formula>& members() const { return members_; }
    bool contains(Formula f) const { return member_set_.count(f) != 0; }

    /// Positive bases, ordered by (size, id).
    const std::vector<Formula>& classes() const { return classes_; }
    std::size_t class_count() const { return classes_.size(); }

    /// Class index of a formula of the closure.
    std::optional<std::size_t> class_of(Formula base) const;

    /// Distinct time terms compared against x.
    const std::vector<TimeTerm>& terms() const { return terms_; }
    bool has_dynamic() const { return has_dynamic_; }

    /// Re-applies every rule to every member; true if nothing new would be added.
    bool is_closed() const;

private:
    Formula origin_;
    std::vector<Formula> members_;
    std::unordered_map<Formula, bool> member_set_;
    std::vector<Formula> classes_;
    std::unordered_map<Formula, std::size_t> class_index_;
    std::vector<TimeTerm> terms_;
    bool has_dynamic_ = false;
};

/// Formulas a single closure rule application derives from f (c1-c12).
std::vector<Formula> closure_step(Formula f);

inline std::size_t closure_bound(Formula f) { return 7 * f.size() + 3; }

}  // namespace tltl
