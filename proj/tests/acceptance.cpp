// Acceptance run: one PASS/FAIL line per criterion, with wall time.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "tltl/closure.hpp"
#include "tltl/mso.hpp"
#include "tltl/parser.hpp"
#include "tltl/product.hpp"

using namespace tltl;
using Clock = std::chrono::steady_clock;

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
    "G(waiting -> X granted)",
    "G(x=y -> X(x<y))",
    "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+5))",
    "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+3))",
    "forall t. G(ready & x=t -> F(granted & x<=t+9))",
    "forall t. G(tick -> !(x=t+1))",
    "G(l1 -> F a1)",
    "F a1",
};

const char* const kFormulas[] = {
    "G F (x=y)",
    "G(p & x = t0 -> F(q & x <= t0 + 5))",
    "G((x<y) -> X(x=y))",
    "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+5))",
    "F G p",
    "G(x < 7)",
    "p U (x > 3)",
    "x<y & X(x=y & p) & F(x > t + 4)",
    "!G((x=y)|(x<y))",
    "G(p -> X !p) & G F p & G(x < y -> X(x = y))",
};

// Everything a criterion reports.
struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) note << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// A Sat or Fails witness together with the formula it must satisfy.
struct CorpusWitness {
    std::string origin;
    QuantifiedFormula formula;
    TimedWitness witness;
    TimeDomain domain;
};

std::vector<CorpusWitness> corpus;

bool alternating(const TimedWitness& w) {
    for (std::size_t i = 0; i + 1 < 3 * w.size(); ++i) {
        TimedState a = w.at(i), b = w.at(i + 1);
        if ((a.x == a.y) == (b.x == b.y)) return false;
        if (a.x == a.y && !(b.y > a.y)) return false;  // a discrete step raises the timeout
        if (a.x < a.y && !(b.x == a.y)) return false;  // a delay step reaches it
    }
    return w.at(0).x == 0 && w.shift > 0;
}

void c1(Outcome& o) {
    std::mt19937_64 rng(1);
    testgen::FormulaShape shape;  // depth 6, 3 props, 2 timing variables
    std::size_t violations = 0, worst = 0;
    for (int i = 0; i < 1000; ++i) {
        Formula f = testgen::random_formula(rng, shape);
        std::size_t n = Closure::of(f).class_count();
        if (n > closure_bound(f)) ++violations;
        worst = std::max(worst, n);
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.note << "1000 formulas, largest closure " << worst << " classes";
}

void c2(Outcome& o) {
    Formula f = parse_formula("G F (x=y)");
    auto t0 = Clock::now();
    SatWitness s = check_sat_timed(f);
    double t = seconds_since(t0);
    o.require(s.sat && s.witness, "unsat");
    if (!s.witness) return;
    ValidationReport rep = validate(*s.witness, f);
    o.require(rep.ok(), rep.summary());
    o.require(alternating(*s.witness), "not alternating");
    o.require(t < 1.0, "took " + std::to_string(t) + " s");
    o.note << "sat in " << t << " s; ";
    for (std::size_t i = 0; i < 5; ++i)
        o.note << "{" << to_string(s.witness->at(i).x) << "," << to_string(s.witness->at(i).y) << "}";
}

void c3(Outcome& o) {
    for (const char* text : {"G((x=y)|(x<y))", "G F (x=y)"}) {
        QuantifiedFormula q = parse(text);
        auto t0 = Clock::now();
        ValidityResult v = check_valid(q);
        double t = seconds_since(t0);
        bool oracle_valid = !oracle::exhaustive_sat(make_not(q.body), true).sat;
        o.require(v.valid, std::string(text) + " invalid");
        o.require(oracle_valid, std::string(text) + " refuted by the exhaustive oracle");
        o.require(t < 2.0, std::string(text) + " took " + std::to_string(t) + " s");
        o.note << text << " valid in " << t << " s; ";
    }
}

void c4(Outcome& o) {
    for (const char* text : {"G(p & x = t0 -> F(q & x <= t0 + 5))", "G((x<y) -> X(x=y))",
                             "forall t0. G(p & x=t0 -> F(q & x>=t0+2 & x<=t0+5))"}) {
        QuantifiedFormula q = parse(text);
        auto t0 = Clock::now();
        SatWitness s = check_sat_timed(q.body);
        double t = seconds_since(t0);
        o.require(s.sat && s.witness, std::string(text) + " unsat");
        if (!s.witness) continue;
        ValidationReport rep = validate(*s.witness, q.body);
        o.require(rep.ok(), std::string(text) + ": " + rep.summary());
        o.require(t < 5.0, std::string(text) + " took " + std::to_string(t) + " s");
        o.note << t << " s; ";
    }
}

void c5(Outcome& o) {
    std::mt19937_64 rng(5);
    testgen::FormulaShape shape;
    shape.constraints = false;
    shape.props = 2;
    std::size_t agree = 0, sat = 0;
    for (int i = 0; i < 200; ++i) {
        Formula f = testgen::random_formula_bounded(rng, shape, 12);
        bool a = check_sat(f).sat;
        bool b = oracle::ltl_sat_bruteforce(f, 5);
        if (a == b) ++agree;
        else o.require(false, to_string(f));
        sat += a;
    }
    o.note << agree << "/200 agree, " << sat << " satisfiable";
}

void c6(Outcome& o) {
    std::mt19937_64 rng(6);
    std::size_t agree = 0, consistent = 0;
    for (int i = 0; i < 500; ++i) {
        ConstraintSet cs = testgen::random_constraint_set(rng, 6, 10);
        Consistency v = check_consistent(cs);
        bool ok = static_cast<bool>(v) == oracle::grid_consistent(cs) && (!v || satisfies(v.valuation, cs));
        if (ok) ++agree;
        else o.require(false, to_string(cs));
        consistent += static_cast<bool>(v);
    }
    o.note << agree << "/500 agree, " << consistent << " consistent";
}

void c7(Outcome& o) {
    Tks loop = load_tks(model("loop.tks"));
    QuantifiedFormula lt = parse("G(x<y)"), alt = parse("G((x=y)|(x<y))");
    McResult r = model_check(loop, lt);
    o.require(r.verdict == McVerdict::Fails && r.counterexample, "loop does not fail G(x<y)");
    if (r.counterexample) {
        ValidationReport rep = validate(*r.counterexample, make_not(lt.body), TimeDomain::Integer);
        o.require(rep.ok(), rep.summary());
        o.require(check_computation(loop, r.run.run).empty(), "replay is not a run of the model");
    }
    for (const char* name : kModels)
        o.require(model_check(load_tks(model(name)), alt).verdict == McVerdict::Holds,
                  std::string(name) + " violates G((x=y)|(x<y))");
    Tks tta = tta_example(2, 1);
    auto t0 = Clock::now();
    McResult a = model_check(tta, alt);
    McResult b = model_check(tta, lt);
    double t = seconds_since(t0);
    o.require(a.verdict == McVerdict::Holds, "tta violates G((x=y)|(x<y))");
    o.require(b.verdict == McVerdict::Fails, "tta satisfies G(x<y)");
    o.require(t < 30.0, "tta took " + std::to_string(t) + " s");
    o.note << "tta_example(2,1): " << tta.locations.size() << " locations, both properties in " << t << " s";
}

void c8(Outcome& o) {
    std::size_t pairs = 0;
    double worst = 0;
    for (const char* name : kModels) {
        Tks k = load_tks(model(name));
        for (const char* spec : kSpecs) {
            Tableau t = Tableau::build(make_not(parse(spec).body), InitialityMode::StartInitial, false);
            t.prune_fast();
            ProductGraph g = build_product(t, k);
            const std::size_t bound = k.locations.size() * t.atoms().size();
            o.require(g.nodes.size() <= bound, std::string(name) + " / " + spec);
            worst = std::max(worst, static_cast<double>(g.nodes.size()) / static_cast<double>(bound));
            ++pairs;
        }
    }
    o.note << pairs << " pairs, largest ratio " << worst;
}

void c9(Outcome& o) {
    std::size_t checked = 0;
    auto add = [&](const std::string& origin, const QuantifiedFormula& q, const TimedWitness& w, TimeDomain dom) {
        ValidationReport rep = validate(w, q.body, dom);
        o.require(rep.ok(), origin + ": " + rep.summary());
        corpus.push_back({origin, q, w, dom});
        ++checked;
    };
    std::vector<QuantifiedFormula> formulas;
    for (const char* s : kFormulas) formulas.push_back(parse(s));
    std::mt19937_64 rng(9);
    testgen::FormulaShape shape;
    shape.max_depth = 5;
    for (int i = 0; i < 150; ++i) {
        Formula f = testgen::random_formula(rng, shape);
        formulas.push_back({timing_variables(f), f});
    }
    for (const auto& q : formulas) {
        for (TimeDomain dom : {TimeDomain::Rational, TimeDomain::Integer}) {
            const char* d = dom == TimeDomain::Integer ? " (integer)" : "";
            SatWitness s = check_sat_timed(q.body, InitialityMode::StartInitial, dom);
            if (s.witness) add("sat " + to_string(q) + d, q, *s.witness, dom);
            ValidityResult v = check_valid(q, InitialityMode::StartInitial, dom);
            if (v.countermodel)
                add("valid " + to_string(q) + d, QuantifiedFormula{q.bound_vars, make_not(q.body)}, *v.countermodel, dom);
        }
    }
    for (const char* name : kModels) {
        Tks k = load_tks(model(name));
        for (const char* spec : kSpecs) {
            QuantifiedFormula q = parse(spec);
            McResult r = model_check(k, q);
            if (r.verdict != McVerdict::Fails) continue;
            o.require(r.counterexample.has_value(), std::string(name) + " / " + spec + " without a counterexample");
            if (!r.counterexample) continue;
            add(std::string("mc ") + name + " / " + spec, QuantifiedFormula{q.bound_vars, make_not(q.body)},
                *r.counterexample, TimeDomain::Integer);
            o.require(check_computation(k, r.run.run).empty(), std::string(name) + " / " + spec + " replay");
        }
    }
    o.note << checked << " witnesses validated";
}

// Pads the timing map so every formula of the pool can be evaluated.
TimedWitness with_timing(TimedWitness w, const std::vector<std::string>& vars, std::mt19937_64& rng) {
    TimingMap extra = w.at(0).timing;
    for (const auto& v : vars)
        if (!extra.count(v)) extra[v] = Rational(static_cast<std::int64_t>(rng() % 8));
    for (auto& s : w.prefix) s.timing = extra;
    for (auto& s : w.cycle) s.timing = extra;
    return w;
}

void c10(Outcome& o) {
    QuantifiedFormula br = parse("G(p & x = t0 -> F(q & x <= t0 + 5))");
    mso::MSODocument d = mso::translate(br);
    mso::MFormula pattern = mso::parse_mso("forall i. (p(i) -> exists j >= i. (q(j) & f(j) <= f(i) + 5))");
    o.require(mso::alpha_equivalent(mso::core(d), pattern), "core is " + mso::to_text(mso::core(d)));

    // every formula behind the corpus, evaluated on every witness
    std::vector<QuantifiedFormula> pool;
    std::vector<mso::MSODocument> docs;
    std::set<std::string> seen;
    for (const auto& c : corpus) {
        if (!seen.insert(to_string(c.formula)).second) continue;
        pool.push_back(c.formula);
        docs.push_back(mso::translate(c.formula));
    }
    std::mt19937_64 rng(10);
    std::size_t evaluations = 0, agree = 0;
    for (const auto& c : corpus) {
        o.require(mso::evaluate_bounded(mso::translate(c.formula), c.formula, c.witness),
                  c.origin + ": witness falsifies its own translation");
        for (std::size_t b = 0; b < pool.size(); b += 4) {
            TimedWitness w = with_timing(c.witness, timing_variables(pool[b].body), rng);
            bool lasso = holds_on(w, pool[b].body);
            bool bounded = mso::evaluate_bounded(docs[b], pool[b], w);
            ++evaluations;
            if (lasso == bounded) ++agree;
            else o.require(false, to_string(pool[b]) + " on " + c.origin);
        }
    }
    o.note << agree << "/" << evaluations << " evaluations agree over " << corpus.size() << " witnesses";
}

}  // namespace

int main() {
    const std::pair<int, std::function<void(Outcome&)>> criteria[] = {
        {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7}, {8, c8}, {9, c9}, {10, c10},
    };
    // whole-criterion limits; per-call limits are checked inside
    const double limits[] = {10, 1e9, 1e9, 1e9, 120, 30, 1e9, 1e9, 1e9, 1e9};
    int failures = 0;
    for (const auto& [n, run] : criteria) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double t = seconds_since(t0);
        o.require(t < limits[n - 1], "exceeded " + std::to_string(limits[n - 1]) + " s");
        failures += !o.pass;
        std::printf("criterion %2d: %s  (%.2f s)  %s\n", n, o.pass ? "PASS" : "FAIL", t, o.note.str().c_str());
        std::fflush(stdout);
    }
    return failures;
}
