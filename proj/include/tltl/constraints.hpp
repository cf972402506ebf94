#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tltl/formula.hpp"
#include "tltl/rational.hpp"

namespace tltl {

struct StaticConstraint {
    Rel rel;
    TimeTerm term;

    friend bool operator==(const StaticConstraint&, const StaticConstraint&) = default;
    friend auto operator<=>(const StaticConstraint&, const StaticConstraint&) = default;
};

/// C(A): at most one dynamic constraint plus static constraints.
struct ConstraintSet {
    std::optional<Rel> dynamic;  // Lt or Eq
    std::vector<StaticConstraint> statics;
};

std::string to_string(const StaticConstraint& c);
std::string to_string(const ConstraintSet& cs);

struct ConstraintPartition {
    std::vector<Rel> c_xy;
    std::vector<StaticConstraint> c_eq_const, c_eq_var;
    std::vector<StaticConstraint> c_gt_const, c_gt_var;
    std::vector<StaticConstraint> c_lt_const, c_lt_var;
};

ConstraintPartition partition(const ConstraintSet& cs);

using TimingMap = std::map<std::string, Rational>;

struct Valuation {
    Rational x{0};
    Rational y{0};
    TimingMap timing;
};

enum class TimeDomain { Rational, Integer };

enum class InconsistencyReason { DuplicateEquality, EmptyInterval, NonnegativityFailure };

const char* to_string(InconsistencyReason r);

struct Consistency {
    bool consistent = false;
    Valuation valuation;  // meaningful when consistent
    InconsistencyReason reason = InconsistencyReason::EmptyInterval;

    explicit operator bool() const { return consistent; }
};

/// Decides whether cs has a solution with x, y and all timing variables
/// nonnegative (integers in the Integer domain) and returns one.
///
/// Runs in time linear in |cs| up to the ordered map keyed by timing
/// variable. If `ops` is given it is incremented once per constraint visit.
Consistency check_consistent(const ConstraintSet& cs, TimeDomain domain = TimeDomain::Rational,
                             std::size_t* ops = nullptr);

/// Like check_consistent, additionally requiring x >= x_lo, x < x_hi_exclusive
/// when given, and the listed timing variables to take the fixed values.
std::optional<Valuation> solve_with_bounds(const ConstraintSet& cs, const Rational& x_lo,
                                           const std::optional<Rational>& x_hi_exclusive,
                                           const std::optional<TimingMap>& fixed_timing,
                                           TimeDomain domain = TimeDomain::Rational);

/// The set of x values compatible with cs once timing variables are fixed
/// (unfixed variables are existentially quantified).
struct XInterval {
    Rational lo{0};
    bool lo_strict = false;
    std::optional<Rational> hi;
    bool hi_strict = true;

    bool contains(const Rational& v) const;
    bool empty(TimeDomain domain) const;
};

std::optional<XInterval> x_interval(const ConstraintSet& cs, const TimingMap& fixed, TimeDomain domain,
                                    InconsistencyReason* why = nullptr);

bool holds(const StaticConstraint& c, const Rational& x, const TimingMap& timing);
/// Direct substitution check of a full valuation.
bool satisfies(const Valuation& v, const ConstraintSet& cs);

}  // namespace tltl
