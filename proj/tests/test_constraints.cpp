#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "tltl/constraints.hpp"

using namespace tltl;

namespace {

StaticConstraint sc(Rel r, std::int64_t c, const char* var = "") { return {r, TimeTerm{var, c}}; }

}  // namespace

TEST_CASE("partition dispatches on shape") {
    ConstraintSet cs{Rel::Lt, {sc(Rel::Eq, 5), sc(Rel::Gt, 3, "t1")}};
    ConstraintPartition p = partition(cs);
    CHECK(p.c_xy.size() == 1);
    CHECK(p.c_eq_const.size() == 1);
    CHECK(p.c_gt_var.size() == 1);
    CHECK(p.c_eq_var.empty());
    CHECK(p.c_lt_const.empty());

    ConstraintPartition e = partition({});
    CHECK(e.c_xy.empty());
    CHECK(e.c_gt_const.empty());

    ConstraintPartition q = partition({std::nullopt, {sc(Rel::Lt, 5, "t0"), sc(Rel::Gt, 2)}});
    CHECK(q.c_lt_var.size() == 1);
    CHECK(q.c_gt_const.size() == 1);
}

TEST_CASE("check_consistent on the documented cases") {
    Consistency a = check_consistent({std::nullopt, {sc(Rel::Eq, 3), sc(Rel::Eq, 5)}});
    CHECK(!a);
    CHECK(a.reason == InconsistencyReason::DuplicateEquality);

    ConstraintSet b{Rel::Lt, {sc(Rel::Eq, 5), sc(Rel::Gt, 3, "t1")}};
    Consistency vb = check_consistent(b);
    REQUIRE(vb);
    CHECK((vb.valuation.x == 5));
    CHECK((vb.valuation.y == 6));
    CHECK((vb.valuation.timing.at("t1") >= 0));
    CHECK((vb.valuation.timing.at("t1") < 2));
    CHECK(satisfies(vb.valuation, b));

    Consistency c = check_consistent({std::nullopt, {sc(Rel::Gt, 4), sc(Rel::Lt, 3)}});
    CHECK(!c);
    CHECK(c.reason == InconsistencyReason::EmptyInterval);

    Consistency d = check_consistent({std::nullopt, {sc(Rel::Eq, 2), sc(Rel::Eq, 5, "t1")}});
    CHECK(!d);
    CHECK(d.reason == InconsistencyReason::NonnegativityFailure);
}

TEST_CASE("same-variable interactions are decided") {
    // x < t + 1 and x > t + 3 cannot both hold
    CHECK(!check_consistent({std::nullopt, {sc(Rel::Lt, 1, "t"), sc(Rel::Gt, 3, "t")}}));
    CHECK(!check_consistent({std::nullopt, {sc(Rel::Eq, 1, "t"), sc(Rel::Eq, 2, "t")}}));
    // x = t + 2 and x > t + 2
    CHECK(!check_consistent({std::nullopt, {sc(Rel::Eq, 2, "t"), sc(Rel::Gt, 2, "t")}}));
    // x > t + 3 and x < t + 4: a unit gap that only rationals fill when x is pinned
    ConstraintSet gap{std::nullopt, {sc(Rel::Gt, 3, "t"), sc(Rel::Lt, 4, "t"), sc(Rel::Eq, 4)}};
    Consistency v = check_consistent(gap);
    REQUIRE(v);
    CHECK(satisfies(v.valuation, gap));
    CHECK(!check_consistent(gap, TimeDomain::Integer));
}

TEST_CASE("solve_with_bounds honours bounds and fixed timing") {
    auto a = solve_with_bounds({std::nullopt, {sc(Rel::Gt, 2)}}, Rational(0), std::nullopt, std::nullopt);
    REQUIRE(a);
    CHECK((a->x > 2));

    auto b = solve_with_bounds({std::nullopt, {sc(Rel::Eq, 1, "t1")}}, Rational(0), std::nullopt, TimingMap{{"t1", Rational(4)}});
    REQUIRE(b);
    CHECK((b->x == 5));

    CHECK(!solve_with_bounds({std::nullopt, {sc(Rel::Lt, 3)}}, Rational(3), std::nullopt, std::nullopt));

    auto c = solve_with_bounds({Rel::Eq, {sc(Rel::Gt, 1)}}, Rational(0), Rational(2), std::nullopt);
    REQUIRE(c);
    CHECK((c->x > 1));
    CHECK((c->x < 2));
    CHECK((c->y == c->x));

    auto d = solve_with_bounds({Rel::Lt, {sc(Rel::Gt, 1)}}, Rational(0), Rational(3), std::nullopt, TimeDomain::Integer);
    REQUIRE(d);
    CHECK((d->x == 2));
    CHECK(is_integer(d->y));
}

TEST_CASE("check_consistent agrees with the half-integer grid oracle") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        ConstraintSet cs = testgen::random_constraint_set(rng);
        INFO(to_string(cs));
        Consistency v = check_consistent(cs);
        CHECK(static_cast<bool>(v) == oracle::grid_consistent(cs));
        if (v) CHECK(satisfies(v.valuation, cs));
        Consistency w = check_consistent(cs, TimeDomain::Integer);
        if (w) {
            CHECK(satisfies(w.valuation, cs));
            CHECK(is_integer(w.valuation.x));
            CHECK(is_integer(w.valuation.y));
            for (const auto& [_, t] : w.valuation.timing) CHECK(is_integer(t));
            CHECK(v);
        }
    }
}

TEST_CASE("work grows linearly with the number of constraints") {
    std::mt19937_64 rng(5);
    auto ops_for = [&](int n) {
        ConstraintSet cs;
        for (int i = 0; i < n; ++i) cs.statics.push_back(sc(Rel::Gt, static_cast<std::int64_t>(rng() % 10), i % 2 ? "t" : ""));
        std::size_t ops = 0;
        check_consistent(cs, TimeDomain::Rational, &ops);
        return ops;
    };
    for (int n : {10, 100, 1000, 10000}) CHECK(ops_for(n) <= static_cast<std::size_t>(2 * n + 2));
}
