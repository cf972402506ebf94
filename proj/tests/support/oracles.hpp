#pragma once

// Independent reference procedures used to cross-check the engines. None of
// these share code with the decision procedures beyond the formula types and
// the closure.

#include <map>
#include <string>
#include <vector>

#include "tltl/constraints.hpp"
#include "tltl/formula.hpp"

namespace oracle {

/// Propositional labelling of an ultimately periodic sequence: states
/// 0..n-1, the last state loops back to `loop`.
struct PropLasso {
    std::vector<std::vector<bool>> labels;  // labels[i][k]: prop k at state i
    std::size_t loop = 0;
};

/// Truth of a constraint-free formula at state 0 of the lasso.
bool eval_ltl(tltl::Formula f, const std::vector<std::string>& props, const PropLasso& w);

/// Searches every lasso with at most max_len states. Constraint-free formulas only.
bool ltl_sat_bruteforce(tltl::Formula f, std::size_t max_len);

/// Satisfiability of cs over x, y and timing values drawn from {0, 1/2, ..., 12}.
bool grid_consistent(const tltl::ConstraintSet& cs);

struct ExhaustiveResult {
    bool sat = false;
    std::size_t atoms = 0;
};

/// Satisfiability by enumerating every assignment to the closure, filtering by
/// a1-a9, building R pairwise and running a generalized Buchi fixpoint.
ExhaustiveResult exhaustive_sat(tltl::Formula f, bool start_initial);

}  // namespace oracle
