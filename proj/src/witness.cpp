#include "tltl/witness.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tltl {

TimedState TimedWitness::at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (cycle.empty()) throw std::out_of_range("witness has no cycle");
    std::size_t k = (i - prefix.size()) / cycle.size();
    TimedState s = cycle[(i - prefix.size()) % cycle.size()];
    Rational d = shift * Rational(static_cast<std::int64_t>(k));
    s.x += d;
    s.y += d;
    return s;
}

namespace {

// Difference constraints v - w <= c over scaled integers. Strict bounds are
// tightened by one unit; with the scale above the variable count this is exact
// for the rationals (any feasible cycle has integral weight).
class DiffSystem {
public:
    explicit DiffSystem(std::size_t vars) : n_(vars) {}

    void le(std::size_t v, std::size_t w, std::int64_t c, bool strict) { edges_.push_back({v, w, c, strict}); }
    void eq(std::size_t v, std::size_t w, std::int64_t c) {
        le(v, w, c, false);
        le(w, v, -c, false);
    }

    // Least nonnegative solution relative to node `zero`, or nullopt.
    std::optional<std::vector<std::int64_t>> solve(std::int64_t scale, std::size_t zero) const {
        // u = -v turns "least v" into the usual greatest-below-zero solution.
        std::vector<std::int64_t> u(n_, 0);
        for (std::size_t round = 0; round <= n_; ++round) {
            bool changed = false;
            for (const auto& e : edges_) {
                std::int64_t wgt = e.c * scale - (e.strict ? 1 : 0);
                // v - w <= c  <=>  u_w <= u_v + c
                if (u[e.v] + wgt < u[e.w]) {
                    u[e.w] = u[e.v] + wgt;
                    changed = true;
                }
            }
            if (!changed) {
                std::vector<std::int64_t> v(n_);
                for (std::size_t i = 0; i < n_; ++i) v[i] = -u[i] + u[zero];
                return v;
            }
        }
        return std::nullopt;
    }

private:
    struct Edge {
        std::size_t v, w;
        std::int64_t c;
        bool strict;
    };
    std::size_t n_;
    std::vector<Edge> edges_;
};

std::vector<std::string> atom_props(const Tableau& t, std::uint32_t id) {
    std::vector<std::string> out;
    for (Formula m : t.space().positive_members(t.atom(id).bits))
        if (m.kind() == Kind::Prop) out.push_back(m.name());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TimedWitness assign_values(const Tableau& t, const Lasso& lasso, TimeDomain domain) {
    if (lasso.cycle.empty()) throw InternalContradiction("lasso without cycle");
    std::vector<std::uint32_t> path = lasso.prefix;
    path.insert(path.end(), lasso.cycle.begin(), lasso.cycle.end());
    const std::size_t n = path.size(), entry = lasso.prefix.size();

    std::vector<std::string> vars;
    for (const auto& u : t.space().closure().terms())
        if (!u.is_constant() && std::find(vars.begin(), vars.end(), u.var) == vars.end()) vars.push_back(u.var);
    for (const auto& v : timing_variables(t.origin()))
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);

    // X_i = 2i, Y_i = 2i + 1 for i in [0, n]; state n is the shifted entry
    auto X = [](std::size_t i) { return 2 * i; };
    auto Y = [](std::size_t i) { return 2 * i + 1; };
    const std::size_t base = 2 * (n + 1);
    auto T = [&](const std::string& v) {
        return base + static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
    };
    const std::size_t Z = base + vars.size(), count = Z + 1;

    std::int64_t eq_steps = 0;
    for (std::uint32_t id : lasso.cycle)
        if (t.atom(id).constraints.dynamic == Rel::Eq) ++eq_steps;

    auto build = [&](std::int64_t shift) {
        DiffSystem s(count);
        for (std::size_t v = 0; v < Z; ++v) s.le(Z, v, 0, false);
        if (t.mode() == InitialityMode::StartInitial) s.eq(X(0), Z, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const ConstraintSet& cs = t.atom(path[i]).constraints;
            if (cs.dynamic == Rel::Eq) {
                s.eq(X(i), Y(i), 0);
                s.eq(X(i + 1), X(i), 0);
                s.le(Y(i), Y(i + 1), 0, true);
            } else {
                // atoms always carry exactly one dynamic constraint
                s.le(X(i), Y(i), 0, true);
                s.eq(X(i + 1), Y(i), 0);
                s.eq(Y(i + 1), Y(i), 0);
            }
            for (const auto& c : cs.statics) {
                std::size_t w = c.term.is_constant() ? Z : T(c.term.var);
                std::int64_t k = c.term.constant;
                switch (c.rel) {
                    case Rel::Lt: s.le(X(i), w, k, true); break;
                    case Rel::Eq: s.eq(X(i), w, k); break;
                    case Rel::Gt: s.le(w, X(i), -k, true); break;
                }
            }
        }
        s.eq(X(n), X(entry), shift);
        s.eq(Y(n), Y(entry), shift);
        return s;
    };

    const std::int64_t shift = std::max<std::int64_t>(1, eq_steps);
    std::optional<std::vector<std::int64_t>> sol;
    std::int64_t scale = 1;
    {
        DiffSystem s = build(shift);
        sol = s.solve(1, Z);
        if (!sol && domain == TimeDomain::Rational) {
            scale = static_cast<std::int64_t>(count) + 1;
            sol = s.solve(scale, Z);
        }
    }
    if (!sol) throw InternalContradiction("no valuation realizes the lasso");

    auto val = [&](std::size_t v) { return Rational((*sol)[v], scale); };
    TimingMap timing;
    for (const auto& v : vars) timing[v] = val(T(v));

    TimedWitness w;
    w.shift = Rational(shift);
    for (std::size_t i = 0; i < n; ++i) {
        TimedState st;
        st.atom_id = path[i];
        st.x = val(X(i));
        st.y = val(Y(i));
        st.timing = timing;
        st.props = atom_props(t, path[i]);
        if (!satisfies(Valuation{st.x, st.y, timing}, t.atom(path[i]).constraints))
            throw InternalContradiction("assigned values break the constraints of atom " + std::to_string(path[i]));
        (i < entry ? w.prefix : w.cycle).push_back(std::move(st));
    }
    return w;
}

// ---------------------------------------------------------------------------

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) os << v.condition << " @" << v.index << ": " << v.detail << "\n";
    return os.str();
}

std::vector<bool> evaluate_lasso(Formula f, const std::vector<TimedState>& states, std::size_t loop) {
    const std::size_t n = states.size();
    if (n == 0 || loop >= n) throw std::invalid_argument("empty lasso view");
    auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : loop; };
    std::unordered_map<std::uint32_t, std::vector<bool>> memo;

    std::function<const std::vector<bool>&(Formula)> ev = [&](Formula g) -> const std::vector<bool>& {
        if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
        std::vector<bool> out(n, false);
        switch (g.kind()) {
            case Kind::True: out.assign(n, true); break;
            case Kind::False: break;
            case Kind::Prop:
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = std::binary_search(states[i].props.begin(), states[i].props.end(), g.name());
                break;
            case Kind::Dynamic:
                for (std::size_t i = 0; i < n; ++i)
                    out[i] = g.rel() == Rel::Lt ? states[i].x < states[i].y : states[i].x == states[i].y;
                break;
            case Kind::Static:
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& tm = states[i].timing;
                    if (!g.term().is_constant() && !tm.count(g.term().var))
                        throw std::out_of_range("unbound timing variable " + g.term().var);
                    out[i] = holds(StaticConstraint{g.rel(), g.term()}, states[i].x, tm);
                }
                break;
            case Kind::Not: {
                const auto& a = ev(g.lhs());
                for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
                break;
            }
            case Kind::Or: {
                const auto& a = ev(g.lhs());
                const auto& b = ev(g.rhs());
                for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
                break;
            }
            case Kind::Next: {
                const auto& a = ev(g.lhs());
                for (std::size_t i = 0; i < n; ++i) out[i] = a[succ(i)];
                break;
            }
            case Kind::Until: {
                const auto& a = ev(g.lhs());
                const auto& b = ev(g.rhs());
                // least fixpoint; two backward sweeps settle the loop
                for (bool changed = true; changed;) {
                    changed = false;
                    for (std::size_t i = n; i-- > 0;) {
                        bool v = b[i] || (a[i] && out[succ(i)]);
                        if (v != out[i]) {
                            out[i] = v;
                            changed = true;
                        }
                    }
                }
                break;
            }
        }
        return memo.emplace(g.id(), std::move(out)).first->second;
    };
    return ev(f);
}

std::pair<std::vector<TimedState>, std::size_t> periodic_view(const TimedWitness& w, Formula f) {
    if (w.cycle.empty()) throw std::invalid_argument("witness has no cycle");
    // once x exceeds every compared term in every cycle state, all
    // constraint truth values repeat with the cycle
    std::int64_t reps = 0;
    if (w.shift > 0) {
        std::set<TimeTerm> terms;
        std::function<void(Formula)> collect = [&](Formula g) {
            if (g.kind() == Kind::Static) terms.insert(g.term());
            if (g.kind() == Kind::Not || g.kind() == Kind::Next) collect(g.lhs());
            if (g.kind() == Kind::Or || g.kind() == Kind::Until) {
                collect(g.lhs());
                collect(g.rhs());
            }
        };
        collect(f);
        for (const auto& s : w.cycle)
            for (const auto& u : terms) {
                Rational bound(u.constant);
                if (!u.is_constant()) {
                    auto it = s.timing.find(u.var);
                    if (it == s.timing.end()) continue;
                    bound += it->second;
                }
                if (s.x > bound) continue;
                Rational need = (bound - s.x) / w.shift;
                reps = std::max(reps, floor_of(need).numerator() + 1);
            }
    }
    std::vector<TimedState> view;
    const std::size_t total = w.prefix.size() + static_cast<std::size_t>(reps + 1) * w.cycle.size();
    for (std::size_t i = 0; i < total; ++i) view.push_back(w.at(i));
    return {std::move(view), w.prefix.size() + static_cast<std::size_t>(reps) * w.cycle.size()};
}

bool holds_on(const TimedWitness& w, Formula f) {
    auto [view, loop] = periodic_view(w, f);
    return evaluate_lasso(f, view, loop)[0];
}

ValidationReport validate(const TimedWitness& w, Formula f, TimeDomain domain, InitialityMode mode) {
    ValidationReport r;
    auto flag = [&](const char* cond, std::size_t i, std::string detail) {
        r.violations.push_back({cond, i, std::move(detail)});
    };
    if (w.cycle.empty()) {
        flag("m2", 0, "no cycle");
        return r;
    }
    const std::size_t n = w.size();
    const TimingMap& timing = w.prefix.empty() ? w.cycle.front().timing : w.prefix.front().timing;
    auto show = [](const TimedState& s) { return "x=" + to_string(s.x) + " y=" + to_string(s.y); };

    for (std::size_t i = 0; i <= n; ++i) {
        TimedState s = w.at(i);
        if (i < n) {
            if (s.x < 0 || s.y < 0) flag("domain", i, "negative value " + show(s));
            if (domain == TimeDomain::Integer && (!is_integer(s.x) || !is_integer(s.y)))
                flag("domain", i, "non-integer value " + show(s));
            if (s.timing != timing) flag("m5", i, "timing variables change value");
            for (const auto& [name, v] : s.timing) {
                if (v < 0) flag("domain", i, "negative timing variable " + name);
                if (domain == TimeDomain::Integer && !is_integer(v)) flag("domain", i, "non-integer " + name);
            }
            if (s.y < s.x) flag("m3", i, "timeout in the past " + show(s));
        }
        if (i == n) break;
        TimedState nx = w.at(i + 1);
        if (nx.x < s.x || nx.y < s.y) flag("m1", i + 1, "decrease from " + show(s) + " to " + show(nx));
        if (s.x < s.y) {
            if (nx.x != s.y || nx.y != s.y) flag("m3", i + 1, "after " + show(s) + " expected x=y=" + to_string(s.y));
        } else if (s.x == s.y) {
            if (nx.x != s.x || !(nx.y > s.y)) flag("m3", i + 1, "after " + show(s) + " expected x fixed, y raised");
        }
    }
    if (!(w.shift > 0)) flag("m2", w.prefix.size(), "cycle does not advance time");
    if (mode == InitialityMode::StartInitial) {
        TimedState s0 = w.at(0);
        if (s0.x != 0) flag("m4", 0, "initial state has " + show(s0));
    }
    try {
        if (!holds_on(w, f)) flag("formula", 0, "formula is false on the witness");
    } catch (const std::exception& e) {
        flag("formula", 0, e.what());
    }
    return r;
}

SatWitness check_sat_timed(Formula f, InitialityMode mode, TimeDomain domain, Tableau* out) {
    Tableau t(nullptr, make_true(), mode);
    SatResult r = check_sat(f, mode, &t);
    SatWitness s;
    s.sat = r.sat;
    s.lasso = r.lasso;
    s.stats = r.stats;
    if (r.sat) s.witness = assign_values(t, r.lasso, domain);
    if (out) *out = std::move(t);
    return s;
}

ValidityResult check_valid(const QuantifiedFormula& qf, InitialityMode mode, TimeDomain domain, Tableau* out) {
    SatWitness s = check_sat_timed(make_not(qf.body), mode, domain, out);
    ValidityResult v;
    v.valid = !s.sat;
    v.lasso = s.lasso;
    v.countermodel = std::move(s.witness);
    v.stats = s.stats;
    return v;
}

}  // namespace tltl
