#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "tltl/parser.hpp"
#include "tltl/serialize.hpp"
#include "tltl/witness.hpp"

using namespace tltl;

namespace {

TimedState st(std::int64_t x, std::int64_t y, std::vector<std::string> props = {}) {
    TimedState s;
    s.x = Rational(x);
    s.y = Rational(y);
    s.props = std::move(props);
    return s;
}

// {0,0},{0,3},{3,3},{3,5},{5,5}, then the last two repeat raised by 2
TimedWitness alternating_sequence() {
    TimedWitness w;
    w.prefix = {st(0, 0), st(0, 3), st(3, 3)};
    w.cycle = {st(3, 5), st(5, 5)};
    w.shift = Rational(2);
    return w;
}

bool has(const ValidationReport& r, const std::string& cond, std::size_t index) {
    for (const auto& v : r.violations)
        if (v.condition == cond && v.index == index) return true;
    return false;
}

}  // namespace

TEST_CASE("the alternating sequence satisfies GF(x = y)") {
    TimedWitness w = alternating_sequence();
    ValidationReport r = validate(w, parse_formula("G F (x = y)"));
    CHECK_MESSAGE(r.ok(), r.summary());
    CHECK(w.at(5).x == Rational(5));
    CHECK(w.at(5).y == Rational(7));
    CHECK(!holds_on(w, parse_formula("F G (x < y)")));
}

TEST_CASE("validation flags a decreasing y") {
    TimedWitness w = alternating_sequence();
    w.prefix[2] = st(3, 2);
    ValidationReport r = validate(w, make_true());
    CHECK(has(r, "m1", 2));
}

TEST_CASE("validation flags a broken timeout step") {
    TimedWitness w = alternating_sequence();
    w.prefix[2] = st(2, 3);  // after 0 < 3 the clock must land on 3
    ValidationReport r = validate(w, make_true());
    CHECK(has(r, "m3", 2));

    TimedWitness frozen = alternating_sequence();
    frozen.shift = Rational(0);
    CHECK(has(validate(frozen, make_true()), "m2", 3));

    TimedWitness late = alternating_sequence();
    for (auto* part : {&late.prefix, &late.cycle})
        for (auto& s : *part) {
            s.x += Rational(1);
            s.y += Rational(1);
        }
    CHECK(has(validate(late, make_true()), "m4", 0));
    CHECK(validate(late, make_true(), TimeDomain::Rational, InitialityMode::PaperLiteral).ok());

    TimedWitness drift = alternating_sequence();
    drift.prefix[1].timing["t"] = Rational(1);
    CHECK(has(validate(drift, make_true()), "m5", 1));

    TimedWitness half = alternating_sequence();
    half.prefix[1].y = Rational(5, 2);
    CHECK(has(validate(half, make_true(), TimeDomain::Integer), "domain", 1));
}

TEST_CASE("GF(x = y) gets an alternating witness") {
    SatWitness s = check_sat_timed(parse_formula("G F (x = y)"));
    REQUIRE(s.sat);
    REQUIRE(s.witness);
    const TimedWitness& w = *s.witness;
    CHECK_MESSAGE(validate(w, parse_formula("G F (x = y)")).ok(), witness_table(w));
    for (std::size_t i = 0; i + 1 < 3 * w.size(); ++i) {
        TimedState a = w.at(i), b = w.at(i + 1);
        CHECK((a.x == a.y) != (b.x == b.y));
        if (a.x == a.y) CHECK(b.y > a.y);
    }
    CHECK(w.at(0).x == Rational(0));
    CHECK(w.shift > Rational(0));
}

TEST_CASE("equality constraints pin the clock exactly") {
    Formula f = parse_formula("p & F(x = t + 2 & q)");
    Tableau t(nullptr, make_true(), InitialityMode::StartInitial);
    SatWitness s = check_sat_timed(f, InitialityMode::StartInitial, TimeDomain::Rational, &t);
    REQUIRE(s.witness);
    bool seen = false;
    for (std::size_t i = 0; i < s.witness->size(); ++i) {
        TimedState a = s.witness->at(i);
        if (t.holds(*a.atom_id, make_static(Rel::Eq, {"t", 2}))) {
            CHECK(a.x == a.timing.at("t") + Rational(2));
            seen = true;
        }
    }
    CHECK(seen);
    CHECK(validate(*s.witness, f).ok());
}

TEST_CASE("rational values appear only when integers do not fit") {
    Formula f = parse_formula("F(x > 3 & x < 4)");
    SatWitness s = check_sat_timed(f);
    REQUIRE(s.witness);
    CHECK(validate(*s.witness, f).ok());
    CHECK_THROWS_AS(check_sat_timed(f, InitialityMode::StartInitial, TimeDomain::Integer), InternalContradiction);

    SatWitness i = check_sat_timed(parse_formula("F(x > 3 & x < 5)"), InitialityMode::StartInitial, TimeDomain::Integer);
    REQUIRE(i.witness);
    CHECK(validate(*i.witness, parse_formula("F(x > 3 & x < 5)"), TimeDomain::Integer).ok());
}

TEST_CASE("check_valid") {
    CHECK(check_valid(parse("G((x = y) | (x < y))")).valid);
    CHECK(check_valid(parse("G F (x = y)")).valid);
    ValidityResult p = check_valid(parse("p"));
    REQUIRE(!p.valid);
    REQUIRE(p.countermodel);
    CHECK(p.countermodel->at(0).props.empty());
    CHECK(validate(*p.countermodel, make_not(make_prop("p"))).ok());
}

TEST_CASE("every satisfiable random formula gets a validating witness") {
    std::mt19937_64 rng(17);
    testgen::FormulaShape shape;
    shape.max_depth = 4;
    shape.max_constant = 4;
    int sat = 0;
    for (int i = 0; i < 150; ++i) {
        Formula f = testgen::random_formula_bounded(rng, shape, 14);
        INFO(to_string(f));
        for (auto mode : {InitialityMode::StartInitial, InitialityMode::PaperLiteral}) {
            SatWitness s = check_sat_timed(f, mode);
            if (!s.sat) continue;
            ++sat;
            REQUIRE(s.witness);
            ValidationReport r = validate(*s.witness, f, TimeDomain::Rational, mode);
            CHECK_MESSAGE(r.ok(), r.summary() << witness_table(*s.witness));
        }
    }
    CHECK(sat > 50);
}

TEST_CASE("witness JSON round-trips") {
    SatWitness s = check_sat_timed(parse_formula("G(x = t -> F x > t + 2) & F x = t & G F p"));
    REQUIRE(s.witness);
    Json j = to_json(*s.witness);
    TimedWitness back = witness_from_json(Json::parse(j.dump()));
    CHECK(to_json(back) == j);
    CHECK(witness_table(back) == witness_table(*s.witness));
    CHECK_THROWS_AS(witness_from_json(Json::parse(R"({"prefix":[],"cycle":[{"x":"1/0"}],"shift":"1"})")),
                    std::invalid_argument);
}

TEST_CASE("rational text form") {
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4)) == "-4");
    CHECK(parse_rational("7/14") == Rational(1, 2));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(!parse_rational("1/-2"));
    CHECK(!parse_rational("x"));
    CHECK(!parse_rational("3/0"));
}
