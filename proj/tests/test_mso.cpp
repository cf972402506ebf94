#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "generators.hpp"
#include "tltl/mso.hpp"
#include "tltl/parser.hpp"

using namespace tltl;
using namespace tltl::mso;

namespace {

std::size_t count_kind(Formula f, Kind k) {
    std::size_t n = f.kind() == k;
    if (f.kind() == Kind::Not || f.kind() == Kind::Next) n += count_kind(f.lhs(), k);
    if (f.kind() == Kind::Or || f.kind() == Kind::Until) n += count_kind(f.lhs(), k) + count_kind(f.rhs(), k);
    return n;
}

// deepest chain of nexts above an atomic formula; -1 without one
long next_depth(Formula f) {
    switch (f.kind()) {
        case Kind::Prop:
        case Kind::Dynamic:
        case Kind::Static: return 0;
        case Kind::Next: {
            long d = next_depth(f.lhs());
            return d < 0 ? d : d + 1;
        }
        case Kind::Not: return next_depth(f.lhs());
        case Kind::Or: return std::max(next_depth(f.lhs()), next_depth(f.rhs()));
        default: return -1;
    }
}

void binders(const MFormula& f, std::vector<std::string>& out) {
    if (!f->kids.empty() && f->kind != Node::Kind::Not && f->kind != Node::Kind::And && f->kind != Node::Kind::Or &&
        f->kind != Node::Kind::Implies)
        out.push_back(f->name);
    for (const auto& k : f->kids) binders(k, out);
}

TimedWitness with_timing(TimedWitness w, const std::vector<std::string>& vars, std::mt19937_64& rng) {
    TimingMap extra = w.at(0).timing;
    for (const auto& v : vars)
        if (!extra.count(v)) extra[v] = Rational(static_cast<std::int64_t>(rng() % 8));
    for (auto& s : w.prefix) s.timing = extra;
    for (auto& s : w.cycle) s.timing = extra;
    return w;
}

}  // namespace

TEST_CASE("bounded response translates to the first-order pattern") {
    MSODocument d = translate(parse("G(p & x = t0 -> F(q & x <= t0 + 5))"));
    MFormula want = parse_mso("forall i. (p(i) -> exists j >= i. (q(j) & f(j) <= f(i) + 5))");
    CHECK_MESSAGE(alpha_equivalent(core(d), want), to_text(core(d)));
    // near misses
    CHECK(!alpha_equivalent(core(d), parse_mso("forall i. (p(i) -> exists j >= i. (q(j) & f(j) <= f(i) + 4))")));
    CHECK(!alpha_equivalent(core(d), parse_mso("forall i. (p(i) -> exists j >= i. (q(j) & f(j) < f(i) + 5))")));
    CHECK(!alpha_equivalent(core(d), parse_mso("forall i. (p(i) -> exists j >= i. (q(j) & f(i) <= f(j) + 5))")));
    CHECK(!alpha_equivalent(core(d), parse_mso("exists i. (p(i) -> exists j >= i. (q(j) & f(j) <= f(i) + 5))")));
}

TEST_CASE("the timeout variant keeps its x = y guards") {
    MSODocument d = translate(parse("forall t0. G(p & x=y & x = t0 -> F(q & x=y & x <= t0 + 5))"));
    MFormula want =
        parse_mso("forall i. (p(i) & f(i) = g(i) -> exists j >= i. (q(j) & f(j) = g(j) & f(j) <= f(i) + 5))");
    CHECK_MESSAGE(alpha_equivalent(core(d), want), to_text(core(d)));
}

TEST_CASE("alpha-equivalence") {
    CHECK(alpha_equivalent(parse_mso("forall a. exists b >= a. p(b)"), parse_mso("forall u. exists v >= u. p(v)")));
    CHECK(alpha_equivalent(parse_mso("forall a. p(a) & q(a+1)"), parse_mso("forall b. q(b+1) & p(b)")));
    CHECK(alpha_equivalent(parse_mso("forall a. p(a) -> q(a)"), parse_mso("forall a. !q(a) -> !p(a)")));
    CHECK(!alpha_equivalent(parse_mso("forall a. exists b >= a. p(b)"), parse_mso("forall a. exists b >= a. p(a)")));
    CHECK(!alpha_equivalent(parse_mso("p(0)"), parse_mso("q(0)")));
    CHECK(!alpha_equivalent(parse_mso("forall a. t(a) = 1"), parse_mso("forall a. u(a) = 1")));
    CHECK(alpha_equivalent(parse_mso("forall t in T. t(0) = 1"), parse_mso("forall u in T. u(0) = 1")));
}

TEST_CASE("small translations") {
    CHECK(to_text(translate(parse("false")).body) == "false");
    CHECK(to_text(translate(parse("X X p")).body) == "p(2)");
    CHECK(to_text(translate(parse("x < y")).body) == "f(0) < g(0)");
    CHECK(to_text(translate(parse("X(x > t + 3)")).body) == "f(1) > t(0) + 3");
    CHECK(to_text(translate(parse("p U q")).body) == "exists j >= 0. q(j) & (forall k in [0, j). p(k))");
    CHECK(to_text(translate(parse("p U X q")).body) == "exists j >= 0. q(j+1) & (forall k in [0, j). p(k))");
    CHECK(to_text(simplify(translate(parse("F p")).body)) == "exists j. p(j)");
    CHECK(to_text(simplify(translate(parse("G p")).body)) == "forall j. p(j)");
}

TEST_CASE("documents list their symbols") {
    MSODocument d = translate(parse("forall a b. G(p -> x = a) & F(q | x > b + 1) & X p"));
    CHECK(d.free_predicates == std::vector<std::string>{"p", "q"});
    CHECK(d.free_functions == std::vector<std::string>{"f", "g", "a", "b"});
    // a timing variable named like a reserved function is renamed
    MSODocument e = translate(parse("forall f. G(p -> x = f)"));
    CHECK(e.free_functions == std::vector<std::string>{"f", "g", "f'"});
    CHECK(e.timing_function.at("f") == "f'");
    CHECK(to_text(parse_mso(e.text)) == e.text);
}

TEST_CASE("translation mirrors the source structure") {
    std::mt19937_64 rng(7);
    testgen::FormulaShape shape;
    for (int n = 0; n < 300; ++n) {
        Formula f = testgen::random_formula(rng, shape);
        QuantifiedFormula q{timing_variables(f), f};
        MSODocument d = translate(q);
        INFO(to_string(f));
        NodeCounts c = count_nodes(d.body);
        const std::size_t untils = count_kind(f, Kind::Until);
        CHECK(c.exists == untils);
        CHECK(c.forall == untils);
        CHECK(c.preds == count_kind(f, Kind::Prop));
        CHECK(c.cmps == count_kind(f, Kind::Dynamic) + count_kind(f, Kind::Static));
        if (untils == 0) CHECK(c.max_offset == std::max(0L, next_depth(f)));

        // printing is parseable and stable
        CHECK(to_text(parse_mso(d.text)) == d.text);
        CHECK(canonical(parse_mso(d.text)) == canonical(d.formula));

        // binders are pairwise distinct and never reuse a symbol
        std::vector<std::string> names;
        binders(d.body, names);
        std::set<std::string> distinct(names.begin(), names.end());
        CHECK(distinct.size() == names.size());
        for (const auto& p : d.free_predicates) CHECK(!distinct.count(p));
        for (const auto& fn : d.free_functions) CHECK(!distinct.count(fn));
        CHECK(!distinct.count("i"));

        // the simplifier and the timing elimination preserve alpha-classes
        CHECK(alpha_equivalent(simplify(d.body), d.body));
    }
}

TEST_CASE("bounded evaluation agrees with lasso semantics") {
    std::mt19937_64 rng(11);
    testgen::FormulaShape shape;
    shape.max_depth = 5;
    std::vector<QuantifiedFormula> pool;
    for (const char* s : {"G F (x=y)", "G((x<y) -> X(x=y))", "G(p & x = t0 -> F(q & x <= t0 + 5))",
                          "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+5))", "F G p", "G(x < 7)", "p U (x > 3)"})
        pool.push_back(parse(s));
    for (int n = 0; n < 40; ++n) {
        Formula f = testgen::random_formula(rng, shape);
        pool.push_back({timing_variables(f), f});
    }
    std::vector<MSODocument> docs;
    for (const auto& q : pool) docs.push_back(translate(q));

    std::size_t witnesses = 0, agreements = 0, positives = 0;
    for (std::size_t a = 0; a < pool.size(); ++a) {
        for (TimeDomain dom : {TimeDomain::Rational, TimeDomain::Integer}) {
            SatWitness s = check_sat_timed(pool[a].body, InitialityMode::StartInitial, dom);
            if (!s.sat || !s.witness) continue;
            ++witnesses;
            for (std::size_t b = 0; b < pool.size(); ++b) {
                TimedWitness w = with_timing(*s.witness, timing_variables(pool[b].body), rng);
                const bool lasso = holds_on(w, pool[b].body);
                const bool bounded = evaluate_bounded(docs[b], pool[b], w);
                INFO(to_string(pool[b].body) << " on a witness of " << to_string(pool[a].body));
                CHECK(lasso == bounded);
                agreements += lasso == bounded;
                positives += lasso;
            }
            // every witness satisfies its own translation
            CHECK(evaluate_bounded(docs[a], pool[a], *s.witness));
        }
    }
    CHECK(witnesses > 20);
    CHECK(positives > 0);
    CHECK(positives < agreements);
}

TEST_CASE("the frame conjuncts reject broken sequences") {
    QuantifiedFormula q = parse("true");
    MSODocument d = translate(q);
    TimedWitness w;
    auto st = [](std::int64_t x, std::int64_t y) {
        TimedState s;
        s.x = Rational(x);
        s.y = Rational(y);
        return s;
    };
    w.prefix = {st(0, 0), st(0, 3), st(3, 3)};
    w.cycle = {st(3, 5), st(5, 5)};
    w.shift = Rational(2);
    CHECK(evaluate_bounded(d, q, w));
    // time stops
    TimedWitness stuck = w;
    stuck.cycle = {st(3, 3)};
    stuck.shift = Rational(0);
    CHECK(!evaluate_bounded(d, q, stuck));
    // initial clock not zero while x = y
    TimedWitness late = w;
    late.prefix[0] = st(1, 1);
    CHECK(!evaluate_bounded(d, q, late));
}
