#pragma once
// Timed witnesses: concrete values for x, y and the static timing variables
// along an ultimately periodic state sequence.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tltl/constraints.hpp"
#include "tltl/tableau.hpp"

namespace tltl {

struct TimedState {
    std::optional<std::uint32_t> atom_id;
    Rational x{0};
    Rational y{0};
    TimingMap timing;
    std::vector<std::string> props;  // propositions that hold, sorted
    // model-checking annotations, empty for plain satisfiability witnesses
    std::string location;
    std::vector<std::int64_t> timeouts;
    std::string step;
};

/// prefix followed by cycle repeated forever; the k-th repetition of a cycle
/// state has x and y raised by k * shift.
struct TimedWitness {
    std::vector<TimedState> prefix;
    std::vector<TimedState> cycle;
    Rational shift{0};

    std::size_t size() const { return prefix.size() + cycle.size(); }
    /// State at position i of the unrolled sequence.
    TimedState at(std::size_t i) const;
};

class InternalContradiction : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Concrete values for a fulfilling lasso. Values are integers whenever an
/// integer solution exists; in the Integer domain anything else is an error.
/// Throws InternalContradiction when no valuation realizes the lasso.
TimedWitness assign_values(const Tableau& t, const Lasso& lasso, TimeDomain domain = TimeDomain::Rational);

struct Violation {
    std::string condition;  // m1..m5, domain, formula
    std::size_t index = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Checks m1-m5 and evaluates f at position 0. Timing variables of f are read
/// from the witness.
ValidationReport validate(const TimedWitness& w, Formula f, TimeDomain domain = TimeDomain::Rational,
                          InitialityMode mode = InitialityMode::StartInitial);

/// Truth of f at every position of a finite lasso view: `states` is visited
/// in order, then control returns to `loop`. Constraint truth is read off the
/// given state values as they are, so callers must pass a view where every
/// atomic formula is already periodic.
std::vector<bool> evaluate_lasso(Formula f, const std::vector<TimedState>& states, std::size_t loop);

/// Unrolls w until every constraint of f is periodic and returns the view
/// plus its loop index.
std::pair<std::vector<TimedState>, std::size_t> periodic_view(const TimedWitness& w, Formula f);

bool holds_on(const TimedWitness& w, Formula f);

struct SatWitness {
    bool sat = false;
    Lasso lasso;
    std::optional<TimedWitness> witness;
    TableauStats stats;
};

SatWitness check_sat_timed(Formula f, InitialityMode mode = InitialityMode::StartInitial,
                           TimeDomain domain = TimeDomain::Rational, Tableau* out = nullptr);

struct ValidityResult {
    bool valid = false;
    Lasso lasso;
    std::optional<TimedWitness> countermodel;  // satisfies not(body)
    TableauStats stats;
};

ValidityResult check_valid(const QuantifiedFormula& qf, InitialityMode mode = InitialityMode::StartInitial,
                           TimeDomain domain = TimeDomain::Rational, Tableau* out = nullptr);

}  // namespace tltl
