#include "tltl/product.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace tltl {

const char* to_string(McVerdict v) {
    switch (v) {
        case McVerdict::Holds: return "holds";
        case McVerdict::Fails: return "fails";
        case McVerdict::ConcretizationFailure: return "concretization-failure";
    }
    return "?";
}

std::size_t ProductGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& v : delay) n += v.size();
    for (const auto& v : discrete) n += v.size();
    return n;
}

namespace {

// ---------------------------------------------------------------------------
// Accepting components over any graph whose nodes carry tableau atoms.

struct Arc {
    std::uint32_t to;
    bool delay;
};

struct Acceptance {
    std::vector<int> comp_of;
    std::vector<std::vector<std::uint32_t>> comps;  // reverse topological
    std::vector<bool> accepting;                    // per component
    std::vector<bool> alive;                        // per node
};

Acceptance analyse(const std::vector<std::vector<Arc>>& succ, const std::vector<std::uint32_t>& atom_of,
                   const Tableau& t) {
    const std::size_t n = succ.size();
    Acceptance a;
    a.comp_of.assign(n, -1);
    // iterative Tarjan
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on(n, false);
    std::vector<std::uint32_t> stack;
    int counter = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < succ[v].size()) {
                std::uint32_t w = succ[v][i++].to;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = true;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<std::uint32_t> comp;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = false;
                    a.comp_of[w] = static_cast<int>(a.comps.size());
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                a.comps.push_back(std::move(comp));
            }
            std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }

    const AtomSpace& s = t.space();
    a.accepting.assign(a.comps.size(), false);
    std::vector<bool> good(a.comps.size(), false);
    a.alive.assign(n, false);
    for (std::size_t c = 0; c < a.comps.size(); ++c) {
        const auto& comp = a.comps[c];
        bool inner_delay = false, closed = true;
        for (std::uint32_t v : comp) {
            bool inside = false;
            for (const Arc& e : succ[v])
                if (a.comp_of[e.to] == static_cast<int>(c)) {
                    inside = true;
                    inner_delay = inner_delay || e.delay;
                }
            closed = closed && inside;
        }
        bool ok = closed && inner_delay;
        for (std::size_t u : s.until_classes()) {
            if (!ok) break;
            bool present = false, fulfilled = false;
            auto [q, pos] = s.until_rhs(u);
            for (std::uint32_t v : comp) {
                const auto& bits = t.atom(atom_of[v]).bits;
                present = present || bits[u];
                fulfilled = fulfilled || bits[q] == pos;
            }
            if (present && !fulfilled) ok = false;
        }
        a.accepting[c] = ok;
        // successors' components come earlier in reverse topological order
        bool reach = ok;
        for (std::uint32_t v : comp)
            for (const Arc& e : succ[v])
                if (good[a.comp_of[e.to]]) reach = true;
        good[c] = reach;
        for (std::uint32_t v : comp) a.alive[v] = reach;
    }
    return a;
}

template <class Goal>
std::optional<std::vector<std::uint32_t>> bfs_path(const std::vector<std::vector<Arc>>& succ,
                                                   const std::vector<std::uint32_t>& from,
                                                   const std::function<bool(std::uint32_t)>& allowed, Goal goal) {
    std::unordered_map<std::uint32_t, std::uint32_t> parent;
    std::deque<std::uint32_t> work;
    for (auto v : from)
        if (allowed(v) && !parent.count(v)) {
            parent[v] = v;
            work.push_back(v);
        }
    while (!work.empty()) {
        std::uint32_t v = work.front();
        work.pop_front();
        if (goal(v)) {
            std::vector<std::uint32_t> path{v};
            while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const Arc& e : succ[v])
            if (allowed(e.to) && !parent.count(e.to)) {
                parent[e.to] = v;
                work.push_back(e.to);
            }
    }
    return std::nullopt;
}

struct NodeLasso {
    std::vector<std::uint32_t> prefix, cycle;
};

std::optional<NodeLasso> accepting_lasso(const std::vector<std::vector<Arc>>& succ,
                                         const std::vector<std::uint32_t>& atom_of, const Tableau& t,
                                         const Acceptance& a, const std::vector<std::uint32_t>& initial) {
    auto alive = [&](std::uint32_t v) { return static_cast<bool>(a.alive[v]); };
    auto in_acc = [&](std::uint32_t v) { return static_cast<bool>(a.accepting[a.comp_of[v]]); };
    auto stem = bfs_path(succ, initial, alive, in_acc);
    if (!stem) return std::nullopt;
    const std::uint32_t entry = stem->back();
    const int c = a.comp_of[entry];
    auto inside = [&](std::uint32_t v) { return a.comp_of[v] == c; };

    NodeLasso l;
    l.prefix.assign(stem->begin(), stem->end() - 1);
    std::vector<std::uint32_t> cycle{entry};
    std::uint32_t cur = entry;
    auto walk_to = [&](const std::function<bool(std::uint32_t)>& goal) {
        auto seg = bfs_path(succ, {cur}, inside, goal);
        if (!seg) throw std::logic_error("accepting component is not strongly connected");
        cycle.insert(cycle.end(), seg->begin() + 1, seg->end());
        cur = seg->back();
    };
    // take one delay edge so time advances in every lap
    auto has_inner_delay = [&](std::uint32_t v) {
        for (const Arc& e : succ[v])
            if (e.delay && inside(e.to)) return true;
        return false;
    };
    walk_to(has_inner_delay);
    for (const Arc& e : succ[cur])
        if (e.delay && inside(e.to)) {
            cycle.push_back(e.to);
            cur = e.to;
            break;
        }
    const AtomSpace& s = t.space();
    const auto& comp = a.comps[c];
    for (std::size_t u : s.until_classes()) {
        bool present = std::any_of(comp.begin(), comp.end(), [&](std::uint32_t v) { return t.atom(atom_of[v]).bits[u]; });
        if (!present) continue;
        auto [q, pos] = s.until_rhs(u);
        walk_to([&](std::uint32_t v) { return t.atom(atom_of[v]).bits[q] == pos; });
    }
    if (cur != entry || cycle.size() == 1) {
        // back to the entry along at least one edge
        std::optional<std::vector<std::uint32_t>> back;
        for (const Arc& e : succ[cur]) {
            if (!inside(e.to)) continue;
            auto seg = bfs_path(succ, {e.to}, inside, [&](std::uint32_t v) { return v == entry; });
            if (seg && (!back || seg->size() + 1 < back->size())) {
                seg->insert(seg->begin(), cur);
                back = std::move(seg);
            }
        }
        if (!back) throw std::logic_error("accepting component is not strongly connected");
        cycle.insert(cycle.end(), back->begin() + 1, back->end());
    }
    cycle.pop_back();  // the entry closes the loop
    l.cycle = std::move(cycle);
    return l;
}

bool props_agree(const Tableau& t, std::uint32_t atom, const Location& loc, const std::vector<std::string>& vocab) {
    for (const auto& p : vocab) {
        bool in_atom = t.holds(atom, make_prop(p));
        bool in_loc = std::binary_search(loc.props.begin(), loc.props.end(), p);
        if (in_atom != in_loc) return false;
    }
    return true;
}

std::vector<std::string> vocabulary(const Tableau& t) {
    std::vector<std::string> out;
    for (Formula f : t.space().closure().classes())
        if (f.kind() == Kind::Prop) out.push_back(f.name());
    return out;
}

bool is_eq_atom(const Tableau& t, std::uint32_t a) { return t.atom(a).constraints.dynamic == Rel::Eq; }

}  // namespace

// ---------------------------------------------------------------------------

ProductGraph build_product(const Tableau& t, const Tks& k) {
    ProductGraph g;
    const auto vocab = vocabulary(t);
    std::map<std::pair<std::uint32_t, std::size_t>, std::uint32_t> index;
    std::deque<std::uint32_t> work;
    auto intern = [&](std::uint32_t atom, std::size_t loc) {
        auto [it, fresh] = index.emplace(std::make_pair(atom, loc), static_cast<std::uint32_t>(g.nodes.size()));
        if (fresh) {
            g.nodes.push_back({atom, loc});
            g.delay.emplace_back();
            g.discrete.emplace_back();
            work.push_back(it->second);
        }
        return it->second;
    };
    const bool zero_start = *std::min_element(k.start_timeouts.begin(), k.start_timeouts.end()) == 0;
    for (std::uint32_t a : t.initial_ids()) {
        if (!t.alive(a)) continue;
        const Atom& at = t.atom(a);
        if (t.mode() == InitialityMode::StartInitial && !(zero_start ? at.initial_eq : at.initial_lt)) continue;
        for (std::size_t s : k.initial)
            if (props_agree(t, a, k.locations[s], vocab)) g.initial.push_back(intern(a, s));
    }
    while (!work.empty()) {
        std::uint32_t v = work.front();
        work.pop_front();
        const auto [a, s] = g.nodes[v];
        const bool eq = is_eq_atom(t, a);
        std::set<std::size_t> targets;
        if (eq) {
            for (std::size_t e : k.discrete_from(s)) targets.insert(k.discrete[e].to);
        } else {
            for (std::size_t e : k.delay_from(s)) targets.insert(k.delay[e].to);
        }
        for (std::uint32_t b : t.successors(a)) {
            if (!t.alive(b)) continue;
            for (std::size_t s2 : targets) {
                if (!props_agree(t, b, k.locations[s2], vocab)) continue;
                std::uint32_t w = intern(b, s2);
                (eq ? g.discrete : g.delay)[v].push_back(w);
            }
        }
    }
    return g;
}

std::optional<ProductLasso> find_product_lasso(const Tableau& t, ProductGraph& g) {
    std::vector<std::vector<Arc>> succ(g.nodes.size());
    std::vector<std::uint32_t> atom_of(g.nodes.size());
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        atom_of[v] = g.nodes[v].atom;
        for (auto w : g.delay[v]) succ[v].push_back({w, true});
        for (auto w : g.discrete[v]) succ[v].push_back({w, false});
    }
    Acceptance acc = analyse(succ, atom_of, t);
    g.alive = acc.alive;
    auto l = accepting_lasso(succ, atom_of, t, acc, g.initial);
    if (!l) return std::nullopt;
    return ProductLasso{l->prefix, l->cycle};
}

// ---------------------------------------------------------------------------
// Explicit integer-time refinement

namespace {

struct Explicit {
    std::uint32_t atom;
    std::size_t location;
    std::vector<std::int64_t> pending;  // timeouts minus x
    std::int64_t x;                     // saturated at `horizon`

    auto key() const { return std::tie(atom, location, pending, x); }
    friend bool operator<(const Explicit& a, const Explicit& b) { return a.key() < b.key(); }
};

struct ExplicitEdge {
    std::uint32_t to;
    bool delay;
    std::size_t edge;     // TKS edge index
    std::int64_t amount;  // clock advance (delay) or increment (discrete)
};

struct Search {
    const Tableau& t;
    const Tks& k;
    const ProductGraph& symbolic;
    TimingMap timing;

    Search(const Tableau& t, const Tks& k, const ProductGraph& g, TimingMap m)
        : t(t), k(k), symbolic(g), timing(std::move(m)) {}

    std::int64_t horizon = 1;
    std::int64_t star_slack = 0;
    std::size_t budget = 0;

    std::vector<Explicit> states;
    std::vector<std::vector<ExplicitEdge>> out;
    std::map<Explicit, std::uint32_t> index;
    std::set<std::pair<std::uint32_t, std::size_t>> allowed;  // surviving symbolic nodes

    bool constraints_hold(std::uint32_t atom, std::int64_t x, std::int64_t y) const {
        return satisfies(Valuation{Rational(x), Rational(y), timing}, t.atom(atom).constraints);
    }

    std::optional<std::uint32_t> intern(const Explicit& e, std::deque<std::uint32_t>& work) {
        if (!allowed.count({e.atom, e.location})) return std::nullopt;
        std::int64_t y = e.x + *std::min_element(e.pending.begin(), e.pending.end());
        if (!constraints_hold(e.atom, e.x, y)) return std::nullopt;
        auto [it, fresh] = index.emplace(e, static_cast<std::uint32_t>(states.size()));
        if (fresh) {
            if (states.size() >= budget) throw std::length_error("explicit search exceeds its state budget");
            states.push_back(e);
            out.emplace_back();
            work.push_back(it->second);
        }
        return it->second;
    }

    std::vector<std::uint32_t> explore(std::size_t s0) {
        std::deque<std::uint32_t> work;
        std::vector<std::uint32_t> initial;
        for (std::uint32_t v : symbolic.initial) {
            const ProductNode& n = symbolic.nodes[v];
            if (n.location != s0) continue;
            if (auto id = intern({n.atom, n.location, k.start_timeouts, 0}, work)) initial.push_back(*id);
        }
        while (!work.empty()) {
            std::uint32_t v = work.front();
            work.pop_front();
            const Explicit cur = states[v];
            const std::int64_t wait = *std::min_element(cur.pending.begin(), cur.pending.end());
            std::vector<ExplicitEdge> arcs;
            for (std::uint32_t b : t.successors(cur.atom)) {
                if (!t.alive(b)) continue;
                if (wait > 0) {
                    for (std::size_t e : k.delay_from(cur.location)) {
                        Explicit nx{b, k.delay[e].to, cur.pending, std::min(cur.x + wait, horizon)};
                        for (auto& p : nx.pending) p -= wait;
                        if (auto id = intern(nx, work)) arcs.push_back({*id, true, e, wait});
                    }
                } else {
                    for (std::size_t e : k.discrete_from(cur.location)) {
                        const DiscreteEdge& d = k.discrete[e];
                        std::int64_t hi = d.hi ? *d.hi : d.lo + star_slack;
                        for (std::int64_t delta = d.lo; delta <= hi; ++delta) {
                            Explicit nx{b, d.to, raise_minimal(cur.pending, delta), cur.x};
                            if (auto id = intern(nx, work)) arcs.push_back({*id, false, e, delta});
                        }
                    }
                }
            }
            out[v] = std::move(arcs);
        }
        return initial;
    }
};

std::vector<TimingMap> valuations(const std::vector<std::string>& free, std::int64_t bound, std::size_t cap) {
    std::vector<TimingMap> out{{}};
    for (const auto& v : free) {
        if (out.size() * static_cast<std::size_t>(bound + 1) > cap)
            throw std::length_error("too many valuations of unbound timing variables; lower --bound");
        std::vector<TimingMap> next;
        for (const auto& m : out)
            for (std::int64_t c = 0; c <= bound; ++c) {
                TimingMap n = m;
                n[v] = Rational(c);
                next.push_back(std::move(n));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

McResult model_check(const Tks& k, const QuantifiedFormula& spec, const McOptions& opts) {
    validate_tks(k);
    McResult r;
    const Formula neg = make_not(spec.body);
    Tableau t = Tableau::build(neg, InitialityMode::StartInitial, false);
    r.stats.prune_iterations = t.prune_fast();
    r.stats.atoms = t.atoms().size();
    r.stats.surviving_atoms = t.alive_count();

    ProductGraph g = build_product(t, k);
    r.stats.product_nodes = g.nodes.size();
    r.stats.product_edges = g.edge_count();
    auto sym = find_product_lasso(t, g);
    if (!sym) {
        r.verdict = McVerdict::Holds;
        return r;
    }
    for (auto v : sym->prefix) r.symbolic_prefix.push_back(g.nodes[v]);
    for (auto v : sym->cycle) r.symbolic_cycle.push_back(g.nodes[v]);

    const std::int64_t bound = opts.bound ? *opts.bound : effective_bound(k);
    r.stats.bound = bound;
    std::vector<std::string> vars = spec.bound_vars;
    for (const auto& v : timing_variables(spec.body))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    const bool has_star = std::any_of(k.discrete.begin(), k.discrete.end(), [](const DiscreteEdge& e) { return !e.hi; });

    for (std::size_t s0 : k.initial) {
        std::vector<std::string> free;
        TimingMap fixed;
        for (const auto& v : vars) {
            auto it = k.locations[s0].valuation.find(v);
            if (it == k.locations[s0].valuation.end()) free.push_back(v);
            else fixed[v] = Rational(it->second);
        }
        for (TimingMap timing : valuations(free, bound, opts.max_valuations)) {
            ++r.stats.valuations;
            timing.insert(fixed.begin(), fixed.end());
            Search s(t, k, g, timing);
            for (const auto& u : t.space().closure().terms()) {
                Rational v(u.constant);
                if (!u.is_constant()) v += timing.at(u.var);
                s.horizon = std::max(s.horizon, floor_of(v).numerator() + 1);
            }
            s.star_slack = bound;
            s.budget = opts.max_states;
            for (std::size_t v = 0; v < g.nodes.size(); ++v)
                if (g.alive[v]) s.allowed.insert({g.nodes[v].atom, g.nodes[v].location});
            std::vector<std::uint32_t> initial = s.explore(s0);
            r.stats.explicit_states += s.states.size();

            std::vector<std::vector<Arc>> succ(s.states.size());
            std::vector<std::uint32_t> atom_of(s.states.size());
            for (std::size_t v = 0; v < s.states.size(); ++v) {
                atom_of[v] = s.states[v].atom;
                for (const auto& e : s.out[v]) succ[v].push_back({e.to, e.delay});
            }
            Acceptance acc = analyse(succ, atom_of, t);
            auto l = accepting_lasso(succ, atom_of, t, acc, initial);
            if (!l) continue;

            // replay with exact clock values
            std::vector<std::uint32_t> path = l->prefix;
            path.insert(path.end(), l->cycle.begin(), l->cycle.end());
            path.push_back(l->cycle.front());
            TksComputation run;
            TksStep cur = initial_step(k, s0);
            run.steps.push_back(cur);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                const ExplicitEdge* arc = nullptr;
                for (const auto& e : s.out[path[i]])
                    if (e.to == path[i + 1]) {
                        arc = &e;
                        break;
                    }
                if (!arc) throw std::logic_error("lasso uses a missing edge");
                TksStep nx;
                if (arc->delay) {
                    nx.location = k.delay[arc->edge].to;
                    nx.x = cur.y;
                    nx.timeouts = cur.timeouts;
                    nx.fired = TksStep::Fired::Delay;
                } else {
                    nx.location = k.discrete[arc->edge].to;
                    nx.x = cur.x;
                    nx.timeouts = raise_minimal(cur.timeouts, arc->amount);
                    nx.fired = TksStep::Fired::Discrete;
                    nx.delta = arc->amount;
                }
                nx.edge = arc->edge;
                nx.y = *std::min_element(nx.timeouts.begin(), nx.timeouts.end());
                run.steps.push_back(nx);
                cur = nx;
            }
            // last step re-enters the cycle shifted in time
            const TksStep closing = run.steps.back();
            run.steps.pop_back();
            r.run.loop = l->prefix.size();
            r.run.shift = closing.x - run.steps[r.run.loop].x;
            r.run.run = std::move(run);
            r.timing = timing;
            TimedWitness w = lasso_witness(k, r.run, timing);
            for (std::size_t i = 0; i < path.size() - 1; ++i) {
                TimedState& st = i < w.prefix.size() ? w.prefix[i] : w.cycle[i - w.prefix.size()];
                st.atom_id = s.states[path[i]].atom;
            }
            r.counterexample = std::move(w);
            r.verdict = McVerdict::Fails;
            return r;
        }
    }
    if (has_star) {
        r.verdict = McVerdict::ConcretizationFailure;
        r.warning = "the symbolic product has a fulfilling lasso but no run with open-ended increments up to l + " +
                    std::to_string(bound) + " realizes it";
    } else {
        // the explicit search is exhaustive here, so the symbolic lasso is spurious
        r.verdict = McVerdict::Holds;
        r.warning = "symbolic counterexample is not realizable by any run";
    }
    return r;
}

}  // namespace tltl
