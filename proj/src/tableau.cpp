#include "tltl/tableau.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace tltl {

const char* to_string(InitialityMode m) {
    return m == InitialityMode::StartInitial ? "start-initial" : "paper-literal";
}

std::vector<Formula> tableau_roots(Formula f) {
    return {f, make_dynamic(Rel::Eq), make_static(Rel::Eq, TimeTerm{"", 0}),
            make_next(make_static(Rel::Gt, TimeTerm{"", 0}))};
}

// ---------------------------------------------------------------------------
// AtomSpace

AtomSpace::AtomSpace(Closure cl) : cl_(std::move(cl)) {
    const auto& classes = cl_.classes();
    const auto& terms = cl_.terms();
    info_.resize(classes.size());
    term_classes_.assign(terms.size(), {npos, npos, npos});
    eventually_gt_.assign(terms.size(), npos);
    std::size_t dyn[2] = {npos, npos};

    for (std::size_t i = 0; i < classes.size(); ++i) {
        Formula f = classes[i];
        ClassInfo& ci = info_[i];
        ci.kind = f.kind();
        switch (f.kind()) {
            case Kind::True: true_cls_ = i; break;
            case Kind::Prop: props_.push_back(i); break;
            case Kind::Dynamic:
                ci.rel = f.rel();
                dyn[f.rel() == Rel::Lt ? 0 : 1] = i;
                break;
            case Kind::Static: {
                ci.rel = f.rel();
                ci.term = static_cast<std::size_t>(std::find(terms.begin(), terms.end(), f.term()) - terms.begin());
                term_classes_[ci.term][static_cast<int>(f.rel())] = i;
                break;
            }
            case Kind::Next: {
                Formula g = f.lhs();
                ci.a = *cl_.class_of(g);
                nexts_.push_back(i);
                if (g.kind() == Kind::True) next_true_ = i;
                if (g.kind() == Kind::Dynamic) (g.rel() == Rel::Eq ? next_eq_ : next_lt_) = i;
                if (g.kind() == Kind::Static && g.rel() == Rel::Gt && g.term() == TimeTerm{"", 0}) next_gt_zero_ = i;
                break;
            }
            case Kind::Or:
            case Kind::Until: {
                ci.a = lit_class(f.lhs(), &ci.a_pos);
                ci.b = lit_class(f.rhs(), &ci.b_pos);
                if (f.kind() == Kind::Until) {
                    ci.next_self = *cl_.class_of(make_next(f));
                    untils_.push_back(i);
                }
                derived_.push_back(i);
                break;
            }
            default: throw std::logic_error("unexpected class base " + to_string(f));
        }
    }
    if (dyn[0] != npos || dyn[1] != npos) {
        if (dyn[0] == npos || dyn[1] == npos) throw std::logic_error("closure has only one dynamic constraint");
        dynamic_ = {dyn[0], dyn[1]};
    }
    for (std::size_t t = 0; t < terms.size(); ++t) {
        for (std::size_t c : term_classes_[t])
            if (c == npos) throw std::logic_error("closure misses a relation for " + to_string(terms[t]));
        bool pos = true;
        eventually_gt_[t] = lit_class(make_eventually(make_static(Rel::Gt, terms[t])), &pos);
        if (terms[t] == TimeTerm{"", 0}) zero_term_ = t;
    }
}

std::size_t AtomSpace::lit_class(Formula f, bool* pos) const {
    Literal l = canon(f);
    auto c = cl_.class_of(l.base);
    if (!c) throw std::out_of_range("formula not in closure: " + to_string(f));
    *pos = l.positive;
    return *c;
}

bool AtomSpace::holds(const AtomBits& a, Formula psi) const {
    bool pos = true;
    std::size_t c = lit_class(psi, &pos);
    return value(a, c, pos);
}

std::pair<std::size_t, bool> AtomSpace::until_rhs(std::size_t cls) const {
    return {info_.at(cls).b, info_.at(cls).b_pos};
}

ConstraintSet AtomSpace::constraints(const AtomBits& a) const {
    ConstraintSet cs;
    if (!dynamic_.empty()) {
        if (a[dynamic_[0]]) cs.dynamic = Rel::Lt;
        else if (a[dynamic_[1]]) cs.dynamic = Rel::Eq;
    }
    const auto& terms = cl_.terms();
    for (std::size_t t = 0; t < terms.size(); ++t)
        for (int r = 0; r < 3; ++r)
            if (a[term_classes_[t][r]]) cs.statics.push_back({static_cast<Rel>(r), terms[t]});
    return cs;
}

std::vector<Formula> AtomSpace::positive_members(const AtomBits& a) const {
    std::vector<Formula> out;
    for (Formula m : cl_.members()) {
        if (m.kind() == Kind::True || (m.kind() == Kind::Next && m.lhs().kind() == Kind::True)) continue;
        if (m.kind() == Kind::Not) continue;
        if (holds(a, m)) out.push_back(m);
    }
    return out;
}

void AtomSpace::search(const Forcing& force, const std::function<void(const AtomBits&)>& emit) const {
    const std::size_t n = info_.size();
    AtomBits bits(n, false);
    std::vector<StaticConstraint> statics;
    const auto& terms = cl_.terms();
    auto allowed = [&](std::size_t c, bool v) { return force[c] < 0 || (force[c] == 1) == v; };

    if (true_cls_ != npos) {
        if (!allowed(true_cls_, true)) return;
        bits[true_cls_] = true;
    }

    // Stage 4: next classes, then derive and check.
    std::function<void(std::size_t)> nexts = [&](std::size_t k) {
        if (k == nexts_.size()) {
            for (std::size_t c : derived_) {
                const ClassInfo& ci = info_[c];
                bool va = value(bits, ci.a, ci.a_pos), vb = value(bits, ci.b, ci.b_pos);
                bits[c] = ci.kind == Kind::Or ? (va || vb) : (vb || (va && bits[ci.next_self]));
                if (!allowed(c, bits[c])) return;
            }
            for (std::size_t t = 0; t < terms.size(); ++t)
                if (!bits[eventually_gt_[t]]) return;  // a9 (some relation always holds by a7)
            emit(bits);
            return;
        }
        std::size_t c = nexts_[k];
        bool must = c == next_true_ || (c == next_eq_ && !dynamic_.empty() && bits[dynamic_[0]]) ||
                    (c == next_lt_ && !dynamic_.empty() && bits[dynamic_[1]]);
        for (bool v : {false, true}) {
            if (must && !v) continue;
            if (!allowed(c, v)) continue;
            bits[c] = v;
            nexts(k + 1);
        }
        bits[c] = false;
    };

    std::function<void(std::size_t)> props = [&](std::size_t k) {
        if (k == props_.size()) return nexts(0);
        std::size_t c = props_[k];
        for (bool v : {false, true}) {
            if (!allowed(c, v)) continue;
            bits[c] = v;
            props(k + 1);
        }
        bits[c] = false;
    };

    // Stage 2: exactly one relation per term, with the a8 check after each choice.
    std::function<void(std::size_t)> statics_stage = [&](std::size_t t) {
        if (t == terms.size()) return props(0);
        const auto& cls = term_classes_[t];
        for (int r = 0; r < 3; ++r) {
            bool ok = true;
            for (int s = 0; s < 3; ++s) ok = ok && allowed(cls[s], s == r);
            if (!ok) continue;
            StaticConstraint sc{static_cast<Rel>(r), terms[t]};
            statics.push_back(sc);
            if (check_consistent(ConstraintSet{std::nullopt, statics})) {
                bits[cls[r]] = true;
                statics_stage(t + 1);
                bits[cls[r]] = false;
            }
            statics.pop_back();
        }
    };

    if (dynamic_.empty()) {
        statics_stage(0);
        return;
    }
    for (int r = 0; r < 2; ++r) {
        if (!allowed(dynamic_[r], true) || !allowed(dynamic_[1 - r], false)) continue;
        bits[dynamic_[r]] = true;
        statics_stage(0);
        bits[dynamic_[r]] = false;
    }
}

std::vector<AtomBits> AtomSpace::enumerate() const {
    std::vector<AtomBits> out;
    search(Forcing(info_.size(), -1), [&](const AtomBits& b) { out.push_back(b); });
    return out;
}

AtomSpace::Forcing AtomSpace::successor_forcing(const AtomBits& a) const {
    Forcing f(info_.size(), -1);
    bool conflict = false;
    auto set = [&](std::size_t c, bool v) {
        std::int8_t want = v ? 1 : 0;
        if (f[c] >= 0 && f[c] != want) conflict = true;
        f[c] = want;
    };
    for (std::size_t n : nexts_) set(info_[n].a, a[n]);  // condition 1
    bool dyn_eq = !dynamic_.empty() && a[dynamic_[1]];
    bool dyn_lt = !dynamic_.empty() && a[dynamic_[0]];
    for (const auto& cls : term_classes_) {
        if (dyn_eq) {
            // x stays put: B keeps exactly the static relations of A
            for (int r = 0; r < 3; ++r) set(cls[r], a[cls[r]]);
        } else if (a[cls[2]]) {
            set(cls[2], true);  // condition 3
        } else if (a[cls[1]]) {
            set(cls[0], false);  // condition 2
            if (dyn_lt) set(cls[1], false);
        }
    }
    if (conflict) f.clear();
    return f;
}

std::vector<AtomBits> AtomSpace::successors(const AtomBits& a) const {
    std::vector<AtomBits> out;
    Forcing f = successor_forcing(a);
    if (f.empty()) return out;
    search(f, [&](const AtomBits& b) { out.push_back(b); });
    return out;
}

std::vector<AtomBits> AtomSpace::initial_variants() const {
    std::vector<AtomBits> out;
    if (zero_term_ == npos) return out;
    Forcing f(info_.size(), -1);
    const auto& cls = term_classes_[zero_term_];
    f[cls[0]] = 0;
    f[cls[1]] = 1;
    f[cls[2]] = 0;
    search(f, [&](const AtomBits& b) {
        if (is_initial_eq(b) || is_initial_lt(b)) out.push_back(b);
    });
    return out;
}

bool AtomSpace::edge(const AtomBits& a, const AtomBits& b) const {
    for (std::size_t n : nexts_)
        if (a[n] != b[info_[n].a]) return false;
    bool dyn_eq = !dynamic_.empty() && a[dynamic_[1]];
    bool dyn_lt = !dynamic_.empty() && a[dynamic_[0]];
    for (const auto& cls : term_classes_) {
        if (a[cls[1]] && !(b[cls[1]] || b[cls[2]])) return false;
        if (a[cls[2]] && !b[cls[2]]) return false;
        if (dyn_eq)
            for (int r = 0; r < 3; ++r)
                if (a[cls[r]] != b[cls[r]]) return false;
        if (dyn_lt && a[cls[1]] && !b[cls[2]]) return false;
    }
    return true;
}

bool AtomSpace::is_initial_eq(const AtomBits& a) const {
    return zero_term_ != npos && !dynamic_.empty() && a[term_classes_[zero_term_][1]] && a[dynamic_[1]];
}

bool AtomSpace::is_initial_lt(const AtomBits& a) const {
    return zero_term_ != npos && !dynamic_.empty() && next_gt_zero_ != npos && a[term_classes_[zero_term_][1]] &&
           a[dynamic_[0]] && a[next_gt_zero_];
}

bool AtomSpace::is_atom(const AtomBits& a) const {
    if (a.size() != info_.size()) return false;
    if (true_cls_ != npos && !a[true_cls_]) return false;           // a1
    if (next_true_ != npos && !a[next_true_]) return false;         // a1
    for (std::size_t c : derived_) {                                // a3, a4
        const ClassInfo& ci = info_[c];
        bool va = value(a, ci.a, ci.a_pos), vb = value(a, ci.b, ci.b_pos);
        bool want = ci.kind == Kind::Or ? (va || vb) : (vb || (va && a[ci.next_self]));
        if (a[c] != want) return false;
    }
    if (!dynamic_.empty()) {
        if (a[dynamic_[0]] == a[dynamic_[1]]) return false;         // a5
        if (a[dynamic_[0]] && next_eq_ != npos && !a[next_eq_]) return false;  // a6.1
        if (a[dynamic_[1]] && next_lt_ != npos && !a[next_lt_]) return false;  // a6.2
    }
    for (std::size_t t = 0; t < term_classes_.size(); ++t) {
        int n = a[term_classes_[t][0]] + a[term_classes_[t][1]] + a[term_classes_[t][2]];
        if (n != 1) return false;                                   // a7
        if (!a[eventually_gt_[t]]) return false;                    // a9
    }
    return static_cast<bool>(check_consistent(constraints(a)));     // a8
}

// ---------------------------------------------------------------------------
// Tableau

Tableau::Tableau(std::shared_ptr<const AtomSpace> space, Formula origin, InitialityMode mode)
    : space_(std::move(space)), origin_(origin), mode_(mode) {}

Tableau Tableau::build(Formula f, InitialityMode mode, bool exhaustive) {
    auto space = std::make_shared<const AtomSpace>(Closure::of(tableau_roots(f)));
    Tableau t(space, f, mode);
    std::vector<AtomBits> starts;
    if (exhaustive) {
        t.materialize_all();
        for (const Atom& a : t.atoms_) starts.push_back(a.bits);
    } else if (mode == InitialityMode::StartInitial) {
        starts = space->initial_variants();
    } else {
        starts = space->enumerate();
    }
    for (const auto& b : starts) {
        if (!space->holds(b, f)) continue;
        if (mode == InitialityMode::StartInitial && !(space->is_initial_eq(b) || space->is_initial_lt(b))) continue;
        t.initial_.push_back(t.add(b));
    }
    std::sort(t.initial_.begin(), t.initial_.end());
    t.explore(t.initial_);
    return t;
}

std::uint32_t Tableau::add(const AtomBits& bits) {
    auto it = index_.find(bits);
    if (it != index_.end()) return it->second;
    Atom a;
    a.id = static_cast<std::uint32_t>(atoms_.size());
    a.bits = bits;
    a.constraints = space_->constraints(bits);
    a.initial_eq = space_->is_initial_eq(bits);
    a.initial_lt = space_->is_initial_lt(bits);
    index_.emplace(bits, a.id);
    atoms_.push_back(std::move(a));
    succ_.emplace_back();
    expanded_.push_back(false);
    alive_.push_back(true);
    return atoms_.back().id;
}

void Tableau::explore(const std::vector<std::uint32_t>& from) {
    std::deque<std::uint32_t> work(from.begin(), from.end());
    while (!work.empty()) {
        std::uint32_t id = work.front();
        work.pop_front();
        if (expanded_[id]) continue;
        expanded_[id] = true;
        std::vector<std::uint32_t> out;
        for (const auto& b : space_->successors(atoms_[id].bits)) {
            std::uint32_t j = add(b);
            out.push_back(j);
            if (!expanded_[j]) work.push_back(j);
        }
        std::sort(out.begin(), out.end());
        succ_[id] = std::move(out);
    }
}

void Tableau::materialize_all() {
    std::vector<std::uint32_t> ids;
    for (const auto& b : space_->enumerate()) ids.push_back(add(b));
    explore(ids);
}

std::size_t Tableau::alive_count() const { return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true)); }

std::vector<std::vector<std::uint32_t>> Tableau::components(std::vector<int>* comp_of) const {
    // Iterative Tarjan over the surviving subgraph. Components come out in
    // reverse topological order: every component reachable from C precedes C.
    const std::size_t n = atoms_.size();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> comps;
    comp_of->assign(n, -1);
    int counter = 0;
    struct Frame {
        std::uint32_t v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (!alive_[root] || index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& fr = call.back();
            const auto& out = succ_[fr.v];
            if (fr.next < out.size()) {
                std::uint32_t w = out[fr.next++];
                if (!alive_[w]) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
                continue;
            }
            std::uint32_t v = fr.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::uint32_t> comp;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    (*comp_of)[w] = static_cast<int>(comps.size());
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
    }
    return comps;
}

bool Tableau::self_fulfilling(const std::vector<std::uint32_t>& comp, const std::vector<int>& comp_of, int c) const {
    for (std::uint32_t v : comp) {
        bool inside = std::any_of(succ_[v].begin(), succ_[v].end(),
                                  [&](std::uint32_t w) { return alive_[w] && comp_of[w] == c; });
        if (!inside) return false;
    }
    for (std::size_t u : space_->until_classes()) {
        bool present = std::any_of(comp.begin(), comp.end(), [&](std::uint32_t v) { return atoms_[v].bits[u]; });
        if (!present) continue;
        auto [q, pos] = space_->until_rhs(u);
        bool fulfilled = std::any_of(comp.begin(), comp.end(), [&](std::uint32_t v) { return atoms_[v].bits[q] == pos; });
        if (!fulfilled) return false;
    }
    return true;
}

SCSReport Tableau::scs_decompose() const {
    std::vector<int> comp_of;
    auto comps = components(&comp_of);
    SCSReport r;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        SCSComponent sc;
        sc.atom_ids = comps[c];
        sc.terminal = true;
        for (std::uint32_t v : comps[c])
            for (std::uint32_t w : succ_[v])
                if (alive_[w] && comp_of[w] != static_cast<int>(c)) sc.terminal = false;
        sc.self_fulfilling = self_fulfilling(comps[c], comp_of, static_cast<int>(c));
        sc.useless = sc.terminal && !sc.self_fulfilling;
        r.components.push_back(std::move(sc));
    }
    std::sort(r.components.begin(), r.components.end(),
              [](const SCSComponent& a, const SCSComponent& b) { return a.atom_ids.front() < b.atom_ids.front(); });
    return r;
}

std::size_t Tableau::prune(std::mt19937_64* rng) {
    std::size_t rounds = 0;
    for (;;) {
        SCSReport r = scs_decompose();
        std::vector<const SCSComponent*> useless;
        for (const auto& c : r.components)
            if (c.useless) useless.push_back(&c);
        if (useless.empty()) break;
        if (rng) {
            // random nonempty subset, so removal order varies run to run
            std::uniform_int_distribution<std::size_t> pick(0, useless.size() - 1);
            std::vector<const SCSComponent*> some{useless[pick(*rng)]};
            for (const auto* c : useless)
                if (c != some.front() && ((*rng)() & 1)) some.push_back(c);
            useless = std::move(some);
        }
        for (const auto* c : useless)
            for (std::uint32_t v : c->atom_ids) alive_[v] = false;
        ++rounds;
    }
    prune_rounds_ = rounds;
    return rounds;
}

std::size_t Tableau::prune_fast() {
    std::vector<int> comp_of;
    auto comps = components(&comp_of);
    std::vector<bool> keep(comps.size(), false);
    std::vector<std::size_t> round(comps.size(), 0);
    std::size_t rounds = 0;
    // Reverse topological order: successors' verdicts are known first.
    for (std::size_t c = 0; c < comps.size(); ++c) {
        bool good = self_fulfilling(comps[c], comp_of, static_cast<int>(c));
        std::size_t r = 0;
        for (std::uint32_t v : comps[c])
            for (std::uint32_t w : succ_[v]) {
                if (!alive_[w] || comp_of[w] == static_cast<int>(c)) continue;
                if (keep[comp_of[w]]) good = true;
                r = std::max(r, round[comp_of[w]]);
            }
        keep[c] = good;
        if (!good) {
            round[c] = r + 1;
            rounds = std::max(rounds, round[c]);
        }
    }
    for (std::size_t v = 0; v < atoms_.size(); ++v)
        if (alive_[v] && !keep[comp_of[v]]) alive_[v] = false;
    prune_rounds_ = rounds;
    return rounds;
}

namespace {

// Shortest path (inclusive of both ends) from src to the first node accepted
// by `goal`, staying inside `allowed`. With `nonempty`, src itself only counts
// after at least one step.
template <class Allowed, class Goal>
std::optional<std::vector<std::uint32_t>> bfs(const std::vector<std::vector<std::uint32_t>>& succ, std::uint32_t src,
                                              Allowed allowed, Goal goal, bool nonempty) {
    if (!nonempty && goal(src)) return std::vector<std::uint32_t>{src};
    std::unordered_map<std::uint32_t, std::uint32_t> parent;
    std::deque<std::uint32_t> work{src};
    std::unordered_map<std::uint32_t, bool> seen;
    seen[src] = false;  // src may be re-entered as a goal in the nonempty case
    while (!work.empty()) {
        std::uint32_t v = work.front();
        work.pop_front();
        for (std::uint32_t w : succ[v]) {
            if (!allowed(w)) continue;
            if (goal(w)) {
                std::vector<std::uint32_t> path{w};
                for (std::uint32_t u = v; u != src; u = parent.at(u)) path.push_back(u);
                path.push_back(src);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (seen.count(w)) continue;
            seen[w] = true;
            parent[w] = v;
            work.push_back(w);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<Lasso> Tableau::find_lasso() const {
    std::vector<int> comp_of;
    auto comps = components(&comp_of);
    std::vector<bool> sf(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) sf[c] = self_fulfilling(comps[c], comp_of, static_cast<int>(c));
    auto is_alive = [&](std::uint32_t v) { return static_cast<bool>(alive_[v]); };

    std::optional<std::vector<std::uint32_t>> best;
    for (std::uint32_t s : initial_) {
        if (!alive_[s]) continue;
        auto p = bfs(succ_, s, is_alive, [&](std::uint32_t v) { return sf[comp_of[v]]; }, false);
        if (p && (!best || p->size() < best->size())) best = p;
    }
    if (!best) return std::nullopt;

    Lasso lasso;
    lasso.prefix.assign(best->begin(), best->end() - 1);
    const std::uint32_t entry = best->back();
    const int c = comp_of[entry];
    auto in_comp = [&](std::uint32_t v) { return alive_[v] && comp_of[v] == c; };

    std::vector<std::uint32_t> cycle{entry};
    std::uint32_t cur = entry;
    for (std::size_t u : space_->until_classes()) {
        const auto& comp = comps[c];
        bool present = std::any_of(comp.begin(), comp.end(), [&](std::uint32_t v) { return atoms_[v].bits[u]; });
        if (!present) continue;
        auto [q, pos] = space_->until_rhs(u);
        auto seg = bfs(succ_, cur, in_comp, [&](std::uint32_t v) { return atoms_[v].bits[q] == pos; }, false);
        if (!seg) throw std::logic_error("self-fulfilling component without fulfilling atom");
        cycle.insert(cycle.end(), seg->begin() + 1, seg->end());
        cur = seg->back();
    }
    auto back = bfs(succ_, cur, in_comp, [&](std::uint32_t v) { return v == entry; }, true);
    if (!back) throw std::logic_error("component is not strongly connected");
    cycle.insert(cycle.end(), back->begin() + 1, back->end() - 1);
    lasso.cycle = std::move(cycle);
    return lasso;
}

TableauStats Tableau::stats() const {
    TableauStats s;
    s.closure_classes = space_->class_count();
    s.atoms = atoms_.size();
    for (const auto& out : succ_) s.edges += out.size();
    s.surviving = alive_count();
    s.prune_iterations = prune_rounds_;
    return s;
}

std::string Tableau::to_dot() const {
    std::ostringstream os;
    os << "digraph tableau {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (const Atom& a : atoms_) {
        os << "  a" << a.id << " [label=\"#" << a.id;
        for (Formula m : space_->positive_members(a.bits)) {
            std::string s = to_string(m);
            std::string esc;
            for (char ch : s) {
                if (ch == '"' || ch == '\\') esc += '\\';
                esc += ch;
            }
            os << "\\n" << esc;
        }
        os << "\"";
        if (!alive_[a.id]) os << ", style=dashed";
        if (std::find(initial_.begin(), initial_.end(), a.id) != initial_.end()) os << ", peripheries=2";
        os << "];\n";
    }
    for (const Atom& a : atoms_)
        for (std::uint32_t w : succ_[a.id]) {
            os << "  a" << a.id << " -> a" << w;
            if (!alive_[a.id] || !alive_[w]) os << " [style=dashed]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

SatResult check_sat(Formula f, InitialityMode mode, Tableau* out) {
    Tableau t = Tableau::build(f, mode, false);
    t.prune_fast();
    SatResult r;
    if (auto l = t.find_lasso()) {
        r.sat = true;
        r.lasso = std::move(*l);
    }
    r.stats = t.stats();
    if (out) *out = std::move(t);
    return r;
}

}  // namespace tltl
