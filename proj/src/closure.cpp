#include "tltl/closure.hpp"

#include <algorithm>
#include <deque>

namespace tltl {

Literal canon(Formula f) {
    switch (f.kind()) {
        case Kind::Not: {
            Literal l = canon(f.lhs());
            l.positive = !l.positive;
            return l;
        }
        case Kind::False: return {make_true(), false};
        case Kind::Next: {
            Literal l = canon(f.lhs());
            return {make_next(l.base), l.positive};
        }
        default: return {f, true};
    }
}

std::vector<Formula> closure_step(Formula f) {
    std::vector<Formula> out{make_true(), make_false(), make_next(make_true()), make_not(f)};
    switch (f.kind()) {
        case Kind::Not: {
            Formula g = f.lhs();
            out.push_back(g);
            if (g.kind() == Kind::Next) out.push_back(make_next(make_not(g.lhs())));  // c6
            break;
        }
        case Kind::Or:
            out.push_back(f.lhs());
            out.push_back(f.rhs());
            break;
        case Kind::Next: out.push_back(f.lhs()); break;
        case Kind::Until:
            out.push_back(f.lhs());
            out.push_back(f.rhs());
            out.push_back(make_next(f));
            break;
        case Kind::Dynamic: {
            Formula lt = make_dynamic(Rel::Lt), eq = make_dynamic(Rel::Eq);
            out.push_back(lt);
            out.push_back(eq);
            if (f.rel() == Rel::Lt) {
                out.push_back(make_next(eq));
                out.push_back(make_eventually(lt));
            } else {
                out.push_back(make_next(lt));
                out.push_back(make_eventually(eq));
            }
            break;
        }
        case Kind::Static:
            for (Rel r : {Rel::Lt, Rel::Eq, Rel::Gt}) out.push_back(make_static(r, f.term()));
            out.push_back(make_eventually(make_static(Rel::Gt, f.term())));
            break;
        default: break;
    }
    return out;
}

namespace {

bool by_size(Formula a, Formula b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.id() < b.id();
}

}  // namespace

Closure Closure::of(Formula f) { return of(std::vector<Formula>{f}); }

Closure Closure::of(const std::vector<Formula>& roots) {
    Closure c;
    if (roots.empty()) return c;
    c.origin_ = roots.front();
    std::deque<Formula> work(roots.begin(), roots.end());
    while (!work.empty()) {
        Formula f = work.front();
        work.pop_front();
        if (!c.member_set_.emplace(f, true).second) continue;
        c.members_.push_back(f);
        for (Formula g : closure_step(f))
            if (!c.member_set_.count(g)) work.push_back(g);
    }
    std::sort(c.members_.begin(), c.members_.end(), by_size);

    for (Formula m : c.members_) {
        Literal l = canon(m);
        if (!c.class_index_.count(l.base)) {
            c.class_index_.emplace(l.base, 0);
            c.classes_.push_back(l.base);
        }
        if (m.kind() == Kind::Dynamic) c.has_dynamic_ = true;
        if (m.kind() == Kind::Static && std::find(c.terms_.begin(), c.terms_.end(), m.term()) == c.terms_.end())
            c.terms_.push_back(m.term());
    }
    std::sort(c.classes_.begin(), c.classes_.end(), by_size);
    for (std::size_t i = 0; i < c.classes_.size(); ++i) c.class_index_[c.classes_[i]] = i;
    std::sort(c.terms_.begin(), c.terms_.end());
    return c;
}

std::optional<std::size_t> Closure::class_of(Formula base) const {
    auto it = class_index_.find(base);
    if (it == class_index_.end()) return std::nullopt;
    return it->second;
}

bool Closure::is_closed() const {
    for (Formula m : members_)
        for (Formula g : closure_step(m))
            if (!contains(g)) return false;
    return true;
}

}  // namespace tltl
