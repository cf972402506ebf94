#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "tltl/closure.hpp"
#include "tltl/parser.hpp"

using namespace tltl;

TEST_CASE("closure of a proposition") {
    Closure c = Closure::of(make_prop("p"));
    for (Formula f : {make_prop("p"), make_not(make_prop("p")), make_true(), make_false(), make_next(make_true())})
        CHECK(c.contains(f));
    CHECK(c.class_count() == 3);
    CHECK(c.is_closed());
}

TEST_CASE("closure of GF(x=y) holds the dynamic machinery") {
    Closure c = Closure::of(parse_formula("G F (x = y)"));
    Formula lt = make_dynamic(Rel::Lt), eq = make_dynamic(Rel::Eq);
    for (Formula f : {lt, eq, make_next(lt), make_next(eq), make_eventually(eq), make_eventually(lt)}) {
        INFO(to_string(f));
        CHECK(c.contains(f));
    }
    CHECK(c.has_dynamic());
}

TEST_CASE("static constraints bring all relations and the eventual x > u") {
    Closure c = Closure::of(parse_formula("x = t + 2"));
    TimeTerm u{"t", 2};
    for (Rel r : {Rel::Lt, Rel::Eq, Rel::Gt}) CHECK(c.contains(make_static(r, u)));
    CHECK(c.contains(make_eventually(make_static(Rel::Gt, u))));
    CHECK(c.terms() == std::vector<TimeTerm>{u});
}

TEST_CASE("negated next adds the next of the negation") {
    Formula p = make_prop("p");
    Closure c = Closure::of(make_not(make_next(p)));
    CHECK(c.contains(make_next(make_not(p))));
    Literal a = canon(make_not(make_next(p))), b = canon(make_next(make_not(p)));
    CHECK(a.base == b.base);
    CHECK(a.positive == b.positive);
    CHECK(!a.positive);
}

TEST_CASE("closure is closed, idempotent and monotone on random formulas") {
    std::mt19937_64 rng(11);
    testgen::FormulaShape shape;
    for (int i = 0; i < 300; ++i) {
        Formula f = testgen::random_formula(rng, shape);
        INFO(to_string(f));
        Closure c = Closure::of(f);
        CHECK(c.is_closed());
        Closure again = Closure::of(c.members());
        CHECK(again.members().size() == c.members().size());
        const auto& mem = c.members();
        Formula psi = mem[rng() % mem.size()];
        Closure sub = Closure::of(psi);
        for (Formula g : sub.members()) CHECK(c.contains(g));
        CHECK(c.class_count() <= closure_bound(f));
    }
}

TEST_CASE("negation classes pair each member with its complement") {
    Closure c = Closure::of(parse_formula("p U X !q"));
    for (Formula m : c.members()) CHECK(c.class_of(canon(m).base).has_value());
    // X!q, !X!q, Xq and !Xq all live in one class
    CHECK(c.members().size() > 2 * c.class_count());
}
