#include <doctest.h>

#include <algorithm>

#include "tltl/parser.hpp"
#include "tltl/product.hpp"

using namespace tltl;

namespace {

std::string model(const char* name) { return std::string(TLTL_SOURCE_DIR) + "/models/" + name; }

const char* const kModels[] = {"loop.tks", "diamond.tks", "request.tks", "tta2.tks"};

const char* const kSpecs[] = {
    "G((x=y)|(x<y))",
    "G(x<y)",
    "G F (x=y)",
    "F G idle",
    "G(tick -> x=y)",
    "G(waiting -> F granted)",
    "G(x=y -> X(x<y))",
    "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+5))",
    "forall t. G(ready & x=t -> F(granted & x<=t+9))",
    "G(l1 -> F a1)",
    "F a1",
};

// Runs the model checker and cross-checks a counterexample independently.
McResult checked(const Tks& k, const char* spec) {
    QuantifiedFormula q = parse(spec);
    McResult r = model_check(k, q);
    if (r.verdict == McVerdict::Fails) {
        REQUIRE(r.counterexample);
        ValidationReport rep = validate(*r.counterexample, make_not(q.body), TimeDomain::Integer);
        CHECK_MESSAGE(rep.ok(), rep.summary());
        CHECK(check_computation(k, r.run.run).empty());
        CHECK(r.run.shift > 0);
        for (const auto& [v, c] : r.timing) CHECK(c >= 0);
    }
    return r;
}

std::size_t reachable_locations(const Tks& k) {
    std::vector<bool> seen(k.locations.size(), false);
    std::vector<std::size_t> work = k.initial;
    for (auto s : work) seen[s] = true;
    while (!work.empty()) {
        std::size_t s = work.back();
        work.pop_back();
        auto visit = [&](std::size_t to) {
            if (!seen[to]) {
                seen[to] = true;
                work.push_back(to);
            }
        };
        for (auto e : k.delay_from(s)) visit(k.delay[e].to);
        for (auto e : k.discrete_from(s)) visit(k.discrete[e].to);
    }
    return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

}  // namespace

TEST_CASE("product edges respect both sides") {
    for (const char* name : kModels) {
        Tks k = load_tks(model(name));
        for (const char* spec : kSpecs) {
            INFO(name << " / " << spec);
            Tableau t = Tableau::build(make_not(parse(spec).body), InitialityMode::StartInitial, false);
            t.prune_fast();
            ProductGraph g = build_product(t, k);
            CHECK(g.nodes.size() <= t.alive_count() * reachable_locations(k));
            for (std::size_t v = 0; v < g.nodes.size(); ++v) {
                const ProductNode& n = g.nodes[v];
                CHECK(t.alive(n.atom));
                const bool eq = t.atom(n.atom).constraints.dynamic == Rel::Eq;
                if (eq) CHECK(g.delay[v].empty());
                else CHECK(g.discrete[v].empty());
                for (auto w : g.delay[v]) {
                    const ProductNode& m = g.nodes[w];
                    auto succ = t.successors(n.atom);
                    CHECK(std::count(succ.begin(), succ.end(), m.atom) == 1);
                    bool edge = false;
                    for (auto e : k.delay_from(n.location)) edge = edge || k.delay[e].to == m.location;
                    CHECK(edge);
                }
                for (auto w : g.discrete[v]) {
                    const ProductNode& m = g.nodes[w];
                    bool edge = false;
                    for (auto e : k.discrete_from(n.location)) edge = edge || k.discrete[e].to == m.location;
                    CHECK(edge);
                }
            }
        }
    }
}

TEST_CASE("the loop model violates G(x < y)") {
    Tks k = load_tks(model("loop.tks"));
    McResult r = checked(k, "G(x<y)");
    REQUIRE(r.verdict == McVerdict::Fails);
    // the first discrete step happens at x = y = 3
    const auto& w = *r.counterexample;
    bool eq = false;
    for (std::size_t i = 0; i < w.size(); ++i) eq = eq || w.at(i).x == w.at(i).y;
    CHECK(eq);
    CHECK(w.at(0).x == 0);
    CHECK(w.at(0).y == 3);
}

TEST_CASE("every model alternates between x < y and x = y") {
    for (const char* name : kModels) {
        INFO(name);
        McResult r = checked(load_tks(model(name)), "G((x=y)|(x<y))");
        CHECK(r.verdict == McVerdict::Holds);
        CHECK(r.warning.empty());
    }
}

TEST_CASE("known verdicts on the loop model") {
    Tks k = load_tks(model("loop.tks"));
    CHECK(checked(k, "G(tick -> x=y)").verdict == McVerdict::Holds);
    CHECK(checked(k, "G(idle -> x<y)").verdict == McVerdict::Holds);
    CHECK(checked(k, "G F tick").verdict == McVerdict::Holds);
    CHECK(checked(k, "forall t. G(tick & x=t -> X X (tick & x=t+3))").verdict == McVerdict::Holds);
    CHECK(checked(k, "F G idle").verdict == McVerdict::Fails);
    CHECK(checked(k, "G(tick -> x=4 | x<4)").verdict == McVerdict::Fails);
    CHECK(checked(k, "F(tick & x=4)").verdict == McVerdict::Fails);
}

TEST_CASE("the diamond model meets its deadline property") {
    Tks k = load_tks(model("diamond.tks"));
    CHECK(checked(k, "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+5))").verdict == McVerdict::Holds);
    // via r the next q after x = 4 comes at 8
    CHECK(checked(k, "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+3))").verdict == McVerdict::Fails);
    // from s the run reaches q within 4 time units
    CHECK(checked(k, "forall t0. G(p & !q & x=t0 & x=y -> F(q & x<=t0+4))").verdict == McVerdict::Holds);
}

TEST_CASE("verdicts agree with simulated runs") {
    for (const char* name : kModels) {
        Tks k = load_tks(model(name));
        for (const char* spec : kSpecs) {
            QuantifiedFormula q = parse(spec);
            McResult r = checked(k, spec);
            if (r.verdict != McVerdict::Holds) continue;
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                auto l = simulate_lasso(k, 2000, seed);
                if (!l) continue;
                TimingMap timing;
                const Location& s0 = k.locations[l->run.steps.front().location];
                bool complete = true;
                for (const auto& v : timing_variables(q.body)) {
                    auto it = s0.valuation.find(v);
                    if (it == s0.valuation.end()) complete = false;
                    else timing[v] = Rational(it->second);
                }
                if (!complete) continue;
                TimedWitness w = lasso_witness(k, *l, timing);
                INFO(name << " / " << spec << " seed " << seed);
                CHECK(holds_on(w, q.body));
            }
        }
    }
}

TEST_CASE("a valid specification holds on every model") {
    for (const char* name : kModels) {
        Tks k = load_tks(model(name));
        for (const char* spec : {"G((x=y) -> F(x<y))", "true", "(x=0) U (x=0 | x>0)"}) {
            INFO(name << " / " << spec);
            REQUIRE(!check_sat(make_not(parse(spec).body)).sat);
            CHECK(checked(k, spec).verdict == McVerdict::Holds);
        }
    }
}

TEST_CASE("unbound timing variables range up to the model bound") {
    Tks k = load_tks(model("loop.tks"));
    // ticks at 3, 6, 9, ... so t = 2 is the only value up to the bound that fails
    McResult r = checked(k, "forall t. G(tick -> !(x=t+1))");
    REQUIRE(r.verdict == McVerdict::Fails);
    CHECK(r.timing.at("t") == 2);
    CHECK(r.stats.valuations >= 1);
}

TEST_CASE("open-ended increments") {
    Tks k = parse_tks("timeouts 1 start 2\nlocations\n  a : p\n  b : q\ninit a\ndelay\n  a -> b\ndiscrete\n  b -[2,*]-> a\n");
    CHECK(checked(k, "G F p").verdict == McVerdict::Holds);
    McResult r = checked(k, "F(q & x=7)");
    CHECK(r.verdict == McVerdict::Fails);
    // a q-state after a gap of 3 or more
    r = checked(k, "forall t. G(q & x=t -> X X (q & x<=t+2))");
    CHECK(r.verdict == McVerdict::Fails);
}
