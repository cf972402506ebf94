#pragma once

// Random formulas and constraint sets for property tests.

#include <random>
#include <string>
#include <vector>

#include "tltl/constraints.hpp"
#include "tltl/formula.hpp"

namespace testgen {

struct FormulaShape {
    int max_depth = 6;
    int props = 3;
    int timing_vars = 2;
    bool constraints = true;
    int max_constant = 10;
};

inline tltl::Formula random_atomic(std::mt19937_64& rng, const FormulaShape& s) {
    using namespace tltl;
    auto roll = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    int choice = roll(s.constraints ? 10 : 6);
    if (choice == 0) return roll(2) ? make_true() : make_false();
    if (choice < 6 && s.props > 0) return make_prop(std::string(1, static_cast<char>('p' + roll(s.props))));
    if (!s.constraints) return make_prop("p");
    if (choice == 6) return make_dynamic(roll(2) ? Rel::Lt : Rel::Eq);
    TimeTerm u;
    u.constant = roll(s.max_constant + 1);
    if (s.timing_vars > 0 && roll(2)) u.var = "t" + std::to_string(roll(s.timing_vars));
    switch (roll(5)) {
        case 0: return make_static(Rel::Lt, u);
        case 1: return make_static(Rel::Eq, u);
        case 2: return make_static(Rel::Gt, u);
        case 3: return make_le(u);
        default: return make_ge(u);
    }
}

inline tltl::Formula random_formula(std::mt19937_64& rng, const FormulaShape& s, int depth) {
    using namespace tltl;
    auto roll = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    if (depth <= 1 || roll(4) == 0) return random_atomic(rng, s);
    auto sub = [&] { return random_formula(rng, s, depth - 1); };
    switch (roll(9)) {
        case 0: return make_not(sub());
        case 1: return make_or(sub(), sub());
        case 2: return make_and(sub(), sub());
        case 3: return make_next(sub());
        case 4: return make_until(sub(), sub());
        case 5: return make_eventually(sub());
        case 6: return make_always(sub());
        case 7: return make_implies(sub(), sub());
        default: return make_not(sub());
    }
}

inline tltl::Formula random_formula(std::mt19937_64& rng, const FormulaShape& s) {
    return random_formula(rng, s, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(s.max_depth)));
}

/// Random formula whose desugared size is at most max_size.
inline tltl::Formula random_formula_bounded(std::mt19937_64& rng, const FormulaShape& s, std::size_t max_size) {
    for (;;) {
        tltl::Formula f = random_formula(rng, s);
        if (f.size() <= max_size) return f;
    }
}

inline tltl::ConstraintSet random_constraint_set(std::mt19937_64& rng, int max_size = 6, int max_constant = 10,
                                                 int timing_vars = 2) {
    using namespace tltl;
    auto roll = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    ConstraintSet cs;
    int n = roll(max_size + 1);
    if (roll(3) == 0) cs.dynamic = roll(2) ? Rel::Lt : Rel::Eq;
    for (int i = 0; i < n; ++i) {
        TimeTerm u;
        u.constant = roll(max_constant + 1);
        if (timing_vars > 0 && roll(2)) u.var = "t" + std::to_string(roll(timing_vars));
        cs.statics.push_back({static_cast<Rel>(roll(3)), u});
    }
    return cs;
}

}  // namespace testgen
