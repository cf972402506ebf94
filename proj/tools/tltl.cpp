// tltl: satisfiability, validity, model checking and translation of TLTL
// formulas. Exit codes: 0 sat/valid/holds, 1 unsat/invalid/fails, 2 errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tltl/mso.hpp"
#include "tltl/parser.hpp"
#include "tltl/product.hpp"
#include "tltl/serialize.hpp"
#include "tltl/tks.hpp"

using namespace tltl;

namespace {

struct Config {
    std::string formula;
    std::string formula_file;
    std::string model;
    std::string mode = "start-initial";
    std::string time = "rational";
    std::string format = "text";
    std::string dot;
    std::string output;
    std::string witness_file;
    std::optional<std::int64_t> bound;
    std::uint64_t seed = 1;
    std::size_t steps = 20;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

QuantifiedFormula formula_of(const Config& c) {
    if (c.formula.empty() == c.formula_file.empty()) throw UsageError("give exactly one of FORMULA or --formula-file");
    return parse(c.formula.empty() ? slurp(c.formula_file) : c.formula);
}

InitialityMode mode_of(const Config& c) {
    return c.mode == "paper-literal" ? InitialityMode::PaperLiteral : InitialityMode::StartInitial;
}
TimeDomain domain_of(const Config& c) { return c.time == "integer" ? TimeDomain::Integer : TimeDomain::Rational; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

void emit(const Config& c, const Json& j, const std::string& text) {
    std::string body = c.format == "json" ? j.dump(2) + "\n" : text;
    if (c.output.empty()) std::cout << body;
    else write_file(c.output, body);
}

std::string stats_line(const TableauStats& s) {
    std::ostringstream o;
    o << "closure classes " << s.closure_classes << ", atoms " << s.atoms << ", edges " << s.edges << ", surviving "
      << s.surviving << ", prune iterations " << s.prune_iterations << "\n";
    return o.str();
}

Json header(const char* command, const QuantifiedFormula& q, const Config& c) {
    Json j;
    j["command"] = command;
    j["formula"] = to_string(q);
    j["mode"] = command == std::string("mc") ? "start-initial" : c.mode;
    j["time"] = command == std::string("mc") ? "integer" : c.time;
    return j;
}

int run_sat(const Config& c) {
    QuantifiedFormula q = formula_of(c);
    Tableau t(nullptr, make_true(), mode_of(c));
    SatWitness s = check_sat_timed(q.body, mode_of(c), domain_of(c), &t);
    if (!c.dot.empty()) write_file(c.dot, t.to_dot());
    Json j = header("sat", q, c);
    j["verdict"] = s.sat ? "sat" : "unsat";
    std::string text = s.sat ? "sat\n" : "unsat\n";
    if (s.sat) {
        j["lasso"] = to_json(s.lasso);
        j["witness"] = to_json(*s.witness);
        text += witness_table(*s.witness);
    }
    j["stats"] = to_json(s.stats);
    emit(c, j, text + stats_line(s.stats));
    return s.sat ? 0 : 1;
}

int run_valid(const Config& c) {
    QuantifiedFormula q = formula_of(c);
    Tableau t(nullptr, make_true(), mode_of(c));
    ValidityResult v = check_valid(q, mode_of(c), domain_of(c), &t);
    if (!c.dot.empty()) write_file(c.dot, t.to_dot());
    Json j = header("valid", q, c);
    j["verdict"] = v.valid ? "valid" : "invalid";
    std::string text = v.valid ? "valid\n" : "invalid\ncountermodel, satisfying the negation:\n";
    if (!v.valid) {
        j["lasso"] = to_json(v.lasso);
        j["countermodel"] = to_json(*v.countermodel);
        text += witness_table(*v.countermodel);
    }
    j["stats"] = to_json(v.stats);
    emit(c, j, text + stats_line(v.stats));
    return v.valid ? 0 : 1;
}

std::string product_dot(const Tks& k, const Tableau& t, const ProductGraph& g) {
    std::ostringstream o;
    o << "digraph product {\n  rankdir=LR;\n";
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        const auto& n = g.nodes[v];
        bool init = std::find(g.initial.begin(), g.initial.end(), v) != g.initial.end();
        o << "  n" << v << " [label=\"A" << n.atom << " @ " << k.locations[n.location].id << "\\n"
          << to_string(t.atom(n.atom).constraints) << "\"" << (init ? ", shape=doublecircle" : "")
          << (!g.alive.empty() && !g.alive[v] ? ", style=dashed" : "") << "];\n";
    }
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        for (auto w : g.delay[v]) o << "  n" << v << " -> n" << w << " [label=\"delay\"];\n";
        for (auto w : g.discrete[v]) o << "  n" << v << " -> n" << w << " [label=\"discrete\"];\n";
    }
    o << "}\n";
    return o.str();
}

int run_mc(const Config& c) {
    QuantifiedFormula q = formula_of(c);
    Tks k = load_tks(c.model);
    McOptions opts;
    opts.bound = c.bound;
    McResult r = model_check(k, q, opts);
    if (!c.dot.empty()) {
        Tableau t = Tableau::build(make_not(q.body), InitialityMode::StartInitial, false);
        t.prune_fast();
        ProductGraph g = build_product(t, k);
        find_product_lasso(t, g);
        write_file(c.dot, product_dot(k, t, g));
    }
    Json j = header("mc", q, c);
    j["model"] = c.model;
    j["verdict"] = to_string(r.verdict);
    std::ostringstream text;
    text << to_string(r.verdict) << "\n";
    if (r.counterexample) {
        j["counterexample"] = to_json(*r.counterexample);
        Json timing = Json::object();
        for (const auto& [v, val] : r.timing) timing[v] = to_string(val);
        j["timing"] = timing;
        text << "counterexample:\n" << witness_table(*r.counterexample);
    }
    if (!r.symbolic_cycle.empty()) {
        auto nodes = [&](const std::vector<ProductNode>& ns) {
            Json a = Json::array();
            for (const auto& n : ns) a.push_back(Json{{"atom", n.atom}, {"location", k.locations[n.location].id}});
            return a;
        };
        j["symbolic_lasso"] = Json{{"prefix", nodes(r.symbolic_prefix)}, {"cycle", nodes(r.symbolic_cycle)}};
    }
    if (!r.warning.empty()) {
        j["warning"] = r.warning;
        text << "warning: " << r.warning << "\n";
    }
    const McStats& s = r.stats;
    j["stats"] = Json{{"atoms", s.atoms},
                      {"surviving_atoms", s.surviving_atoms},
                      {"product_nodes", s.product_nodes},
                      {"product_edges", s.product_edges},
                      {"explicit_states", s.explicit_states},
                      {"valuations", s.valuations},
                      {"prune_iterations", s.prune_iterations},
                      {"bound", s.bound}};
    text << "atoms " << s.atoms << ", surviving " << s.surviving_atoms << ", product nodes " << s.product_nodes
         << ", product edges " << s.product_edges << ", explicit states " << s.explicit_states << ", bound "
         << s.bound << "\n";
    emit(c, j, text.str());
    return r.verdict == McVerdict::Holds ? 0 : 1;
}

int run_translate(const Config& c) {
    QuantifiedFormula q = formula_of(c);
    mso::MSODocument d = mso::translate(q);
    Json j;
    j["command"] = "translate";
    j["formula"] = to_string(q);
    j["text"] = d.text;
    j["free_predicates"] = d.free_predicates;
    j["free_functions"] = d.free_functions;
    j["core"] = mso::to_text(mso::core(d));
    std::string text = d.text + "\n";
    emit(c, j, text);
    return 0;
}

int run_simulate(const Config& c) {
    Tks k = load_tks(c.model);
    TksComputation run;
    std::string failure;
    try {
        run = simulate(k, c.steps, c.seed);
    } catch (const Deadlock& d) {
        run = d.partial();
        failure = d.what();
    }
    Json j;
    j["command"] = "simulate";
    j["model"] = c.model;
    j["seed"] = c.seed;
    j["steps"] = Json::array();
    std::ostringstream text;
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const TksStep& s = run.steps[i];
        std::string fired = s.fired == TksStep::Fired::Start ? "start"
                            : s.fired == TksStep::Fired::Delay ? "delay"
                                                               : "discrete +" + std::to_string(s.delta);
        j["steps"].push_back(Json{{"location", k.locations[s.location].id},
                                  {"x", s.x},
                                  {"y", s.y},
                                  {"timeouts", s.timeouts},
                                  {"fired", fired}});
        text << i << "  " << k.locations[s.location].id << "  x=" << s.x << " y=" << s.y << "  timeouts";
        for (auto v : s.timeouts) text << " " << v;
        text << "  " << fired << "\n";
    }
    if (!failure.empty()) {
        j["error"] = failure;
        emit(c, j, text.str());
        std::cerr << "error: " << failure << "\n";
        return 2;
    }
    emit(c, j, text.str());
    return 0;
}

int run_witness_check(const Config& c) {
    QuantifiedFormula q = formula_of(c);
    Json in;
    try {
        in = Json::parse(slurp(c.witness_file));
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    }
    const Json* w = &in;
    for (const char* key : {"witness", "counterexample", "countermodel"})
        if (in.is_object() && in.contains(key)) w = &in.at(key);
    TimedWitness witness = witness_from_json(*w);
    ValidationReport rep = validate(witness, q.body, domain_of(c), mode_of(c));
    Json j;
    j["command"] = "witness-check";
    j["formula"] = to_string(q);
    j["verdict"] = rep.ok() ? "valid-witness" : "violations";
    j["violations"] = Json::array();
    for (const auto& v : rep.violations)
        j["violations"].push_back(Json{{"condition", v.condition}, {"index", v.index}, {"detail", v.detail}});
    emit(c, j, rep.ok() ? "ok\n" : rep.summary() + "\n");
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"TLTL: satisfiability, validity, model checking and MSO translation"};
    app.require_subcommand(1);
    Config c;

    auto formula_opts = [&](CLI::App* s) {
        s->add_option("formula", c.formula, "TLTL formula");
        s->add_option("--formula-file", c.formula_file, "read the formula from a file");
    };
    auto output_opts = [&](CLI::App* s) {
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
        s->add_option("-o,--output", c.output, "write output to a file");
    };
    auto semantic_opts = [&](CLI::App* s) {
        s->add_option("--mode", c.mode, "initiality")->check(CLI::IsMember({"start-initial", "paper-literal"}));
        s->add_option("--time", c.time, "time domain")->check(CLI::IsMember({"rational", "integer"}));
    };

    CLI::App* sat = app.add_subcommand("sat", "decide satisfiability and print a witness");
    CLI::App* valid = app.add_subcommand("valid", "decide validity and print a countermodel");
    for (CLI::App* s : {sat, valid}) {
        formula_opts(s);
        semantic_opts(s);
        output_opts(s);
        s->add_option("--dot", c.dot, "write the pruned tableau as DOT");
    }

    CLI::App* mc = app.add_subcommand("mc", "model check a timeout Kripke structure");
    formula_opts(mc);
    output_opts(mc);
    mc->add_option("--model", c.model, "model file")->required();
    mc->add_option("--bound", c.bound, "range bound M for unbound timing variables and open increments");
    mc->add_option("--dot", c.dot, "write the symbolic product as DOT");

    CLI::App* tr = app.add_subcommand("translate", "translate into the MSO theory of timeout sequences");
    formula_opts(tr);
    output_opts(tr);

    CLI::App* sim = app.add_subcommand("simulate", "run a model with random choices");
    output_opts(sim);
    sim->add_option("--model", c.model, "model file")->required();
    sim->add_option("--steps", c.steps, "number of steps");
    sim->add_option("--seed", c.seed, "random seed");

    CLI::App* wc = app.add_subcommand("witness-check", "validate a JSON witness against a formula");
    wc->add_option("witness", c.witness_file, "witness JSON, or the JSON output of sat, valid or mc")->required();
    formula_opts(wc);
    semantic_opts(wc);
    output_opts(wc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sat->parsed()) return run_sat(c);
        if (valid->parsed()) return run_valid(c);
        if (mc->parsed()) return run_mc(c);
        if (tr->parsed()) return run_translate(c);
        if (sim->parsed()) return run_simulate(c);
        if (wc->parsed()) return run_witness_check(c);
    } catch (const TksError& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
