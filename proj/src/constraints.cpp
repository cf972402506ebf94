#include "tltl/constraints.hpp"

#include <algorithm>

namespace tltl {

std::string to_string(const StaticConstraint& c) { return std::string("x ") + rel_symbol(c.rel) + " " + to_string(c.term); }

std::string to_string(const ConstraintSet& cs) {
    std::string s = "{";
    bool first = true;
    auto add = [&](const std::string& t) {
        if (!first) s += ", ";
        s += t;
        first = false;
    };
    if (cs.dynamic) add(std::string("x ") + rel_symbol(*cs.dynamic) + " y");
    for (const auto& c : cs.statics) add(to_string(c));
    return s + "}";
}

const char* to_string(InconsistencyReason r) {
    switch (r) {
        case InconsistencyReason::DuplicateEquality: return "DuplicateEquality";
        case InconsistencyReason::EmptyInterval: return "EmptyInterval";
        case InconsistencyReason::NonnegativityFailure: return "NonnegativityFailure";
    }
    return "?";
}

ConstraintPartition partition(const ConstraintSet& cs) {
    ConstraintPartition p;
    if (cs.dynamic) p.c_xy.push_back(*cs.dynamic);
    for (const auto& c : cs.statics) {
        bool k = c.term.is_constant();
        switch (c.rel) {
            case Rel::Eq: (k ? p.c_eq_const : p.c_eq_var).push_back(c); break;
            case Rel::Gt: (k ? p.c_gt_const : p.c_gt_var).push_back(c); break;
            case Rel::Lt: (k ? p.c_lt_const : p.c_lt_var).push_back(c); break;
        }
    }
    return p;
}

bool holds(const StaticConstraint& c, const Rational& x, const TimingMap& timing) {
    Rational u(c.term.constant);
    if (!c.term.is_constant()) {
        auto it = timing.find(c.term.var);
        if (it == timing.end()) return false;
        u += it->second;
    }
    switch (c.rel) {
        case Rel::Lt: return x < u;
        case Rel::Eq: return x == u;
        case Rel::Gt: return x > u;
    }
    return false;
}

bool satisfies(const Valuation& v, const ConstraintSet& cs) {
    if (v.x < 0 || v.y < v.x) return false;
    for (const auto& [_, t] : v.timing)
        if (t < 0) return false;
    if (cs.dynamic == Rel::Lt && !(v.x < v.y)) return false;
    if (cs.dynamic == Rel::Eq && !(v.x == v.y)) return false;
    return std::all_of(cs.statics.begin(), cs.statics.end(),
                       [&](const StaticConstraint& c) { return holds(c, v.x, v.timing); });
}

namespace {

Rational int_lo(const Rational& v, bool strict) { return strict ? floor_of(v) + 1 : ceil_of(v); }
Rational int_hi(const Rational& v, bool strict) { return strict ? ceil_of(v) - 1 : floor_of(v); }

// Constraints of one unfixed timing variable t: x = t + c_e, x > t + c_l, x < t + c_u.
struct VarBounds {
    std::optional<std::int64_t> eq;
    bool eq_conflict = false;
    std::optional<std::int64_t> max_l;  // largest c in x > t + c
    std::optional<std::int64_t> min_u;  // smallest c in x < t + c
};

struct Scan {
    XInterval iv;
    std::optional<Rational> eq;
    std::map<std::string, VarBounds> vars;
    std::optional<Rational> nonneg_lo;  // from x = t + c with t >= 0
    bool duplicate = false;
    bool var_empty = false;
};

void set_eq(Scan& s, const Rational& v) {
    if (s.eq && *s.eq != v) s.duplicate = true;
    s.eq = v;
}
void tighten_lo(XInterval& iv, const Rational& v, bool strict) {
    if (v > iv.lo || (v == iv.lo && strict)) {
        iv.lo = v;
        iv.lo_strict = strict;
    }
}
void tighten_hi(XInterval& iv, const Rational& v, bool strict) {
    if (!iv.hi || v < *iv.hi || (v == *iv.hi && strict)) {
        iv.hi = v;
        iv.hi_strict = strict;
    }
}

Scan scan(const ConstraintSet& cs, const TimingMap& fixed, TimeDomain domain, std::size_t* ops) {
    Scan s;
    for (const auto& c : cs.statics) {
        if (ops) ++*ops;
        Rational k(c.term.constant);
        if (!c.term.is_constant()) {
            auto it = fixed.find(c.term.var);
            if (it == fixed.end()) {
                VarBounds& b = s.vars[c.term.var];
                switch (c.rel) {
                    case Rel::Eq:
                        if (b.eq && *b.eq != c.term.constant) b.eq_conflict = true;
                        b.eq = c.term.constant;
                        break;
                    case Rel::Gt: b.max_l = std::max(b.max_l.value_or(c.term.constant), c.term.constant); break;
                    case Rel::Lt: b.min_u = std::min(b.min_u.value_or(c.term.constant), c.term.constant); break;
                }
                continue;
            }
            k += it->second;
        }
        switch (c.rel) {
            case Rel::Eq: set_eq(s, k); break;
            case Rel::Gt: tighten_lo(s.iv, k, true); break;
            case Rel::Lt: tighten_hi(s.iv, k, true); break;
        }
    }
    const std::int64_t gap = domain == TimeDomain::Integer ? 1 : 0;
    for (const auto& [_, b] : s.vars) {
        if (ops) ++*ops;
        if (b.eq_conflict) s.duplicate = true;
        if (b.eq) {
            if ((b.max_l && !(*b.max_l < *b.eq)) || (b.min_u && !(*b.eq < *b.min_u))) s.var_empty = true;
            s.nonneg_lo = std::max(s.nonneg_lo.value_or(Rational(*b.eq)), Rational(*b.eq));
        } else {
            if (b.max_l && b.min_u && !(*b.max_l + gap < *b.min_u)) s.var_empty = true;
            if (b.max_l) tighten_lo(s.iv, Rational(*b.max_l), true);
        }
    }
    return s;
}

void apply_eq(XInterval& iv, const std::optional<Rational>& eq) {
    if (!eq) return;
    const Rational v = *eq;
    if (!iv.contains(v)) {
        // Force emptiness while keeping the representation well-formed.
        iv.lo = v;
        iv.lo_strict = true;
        iv.hi = v;
        iv.hi_strict = true;
        return;
    }
    iv.lo = v;
    iv.lo_strict = false;
    iv.hi = v;
    iv.hi_strict = false;
}

Rational pick_x(const XInterval& iv, TimeDomain domain) {
    if (domain == TimeDomain::Integer) return int_lo(iv.lo, iv.lo_strict);
    if (!iv.lo_strict) return iv.lo;
    if (!iv.hi) return floor_of(iv.lo) + 1;
    return (iv.lo + *iv.hi) / 2;
}

Rational pick_t(const VarBounds& b, const Rational& x, TimeDomain domain) {
    if (b.eq) return x - *b.eq;
    std::optional<Rational> low;  // t > low
    if (b.min_u) low = x - *b.min_u;
    std::optional<Rational> high;  // t < high
    if (b.max_l) high = x - *b.max_l;
    if (domain == TimeDomain::Integer) {
        if (!high) return (low && *low >= 0) ? floor_of(*low) + 1 : Rational(0);
        return ceil_of(*high) - 1;
    }
    if (!high) return (low && *low >= 0) ? *low + Rational(1, 2) : Rational(0);
    Rational z(1, 2);
    while (!((!low || *high - z > *low) && *high - z >= 0)) z /= 2;
    return *high - z;
}

std::optional<Valuation> solve(const ConstraintSet& cs, const Rational& x_lo, const std::optional<Rational>& x_hi,
                               const TimingMap& fixed, TimeDomain domain, InconsistencyReason* why,
                               std::size_t* ops) {
    Scan s = scan(cs, fixed, domain, ops);
    auto fail = [&](InconsistencyReason r) -> std::optional<Valuation> {
        if (why) *why = r;
        return std::nullopt;
    };
    if (s.duplicate) return fail(InconsistencyReason::DuplicateEquality);
    if (s.var_empty) return fail(InconsistencyReason::EmptyInterval);
    tighten_lo(s.iv, x_lo, false);
    if (x_hi) tighten_hi(s.iv, *x_hi, true);
    XInterval without = s.iv;
    apply_eq(without, s.eq);
    if (without.empty(domain) || (s.eq && domain == TimeDomain::Integer && !is_integer(*s.eq)))
        return fail(InconsistencyReason::EmptyInterval);
    XInterval iv = s.iv;
    if (s.nonneg_lo) tighten_lo(iv, *s.nonneg_lo, false);
    apply_eq(iv, s.eq);
    if (iv.empty(domain)) return fail(InconsistencyReason::NonnegativityFailure);

    Valuation v;
    v.x = pick_x(iv, domain);
    v.y = cs.dynamic == Rel::Lt ? v.x + 1 : v.x;
    v.timing = fixed;
    for (const auto& [name, b] : s.vars) v.timing[name] = pick_t(b, v.x, domain);
    return v;
}

}  // namespace

bool XInterval::contains(const Rational& v) const {
    if (v < lo || (v == lo && lo_strict)) return false;
    if (hi && (v > *hi || (v == *hi && hi_strict))) return false;
    return true;
}

bool XInterval::empty(TimeDomain domain) const {
    if (domain == TimeDomain::Integer) {
        if (!hi) return false;
        return int_lo(lo, lo_strict) > int_hi(*hi, hi_strict);
    }
    if (!hi) return false;
    if (lo < *hi) return false;
    return !(lo == *hi && !lo_strict && !hi_strict);
}

std::optional<XInterval> x_interval(const ConstraintSet& cs, const TimingMap& fixed, TimeDomain domain,
                                    InconsistencyReason* why) {
    Scan s = scan(cs, fixed, domain, nullptr);
    auto fail = [&](InconsistencyReason r) -> std::optional<XInterval> {
        if (why) *why = r;
        return std::nullopt;
    };
    if (s.duplicate) return fail(InconsistencyReason::DuplicateEquality);
    if (s.var_empty) return fail(InconsistencyReason::EmptyInterval);
    if (s.nonneg_lo) tighten_lo(s.iv, *s.nonneg_lo, false);
    apply_eq(s.iv, s.eq);
    if (s.iv.empty(domain) || (s.eq && domain == TimeDomain::Integer && !is_integer(*s.eq)))
        return fail(InconsistencyReason::EmptyInterval);
    return s.iv;
}

Consistency check_consistent(const ConstraintSet& cs, TimeDomain domain, std::size_t* ops) {
    Consistency out;
    auto v = solve(cs, Rational(0), std::nullopt, {}, domain, &out.reason, ops);
    if (v) {
        out.consistent = true;
        out.valuation = std::move(*v);
    }
    return out;
}

std::optional<Valuation> solve_with_bounds(const ConstraintSet& cs, const Rational& x_lo,
                                           const std::optional<Rational>& x_hi_exclusive,
                                           const std::optional<TimingMap>& fixed_timing, TimeDomain domain) {
    static const TimingMap none;
    return solve(cs, x_lo, x_hi_exclusive, fixed_timing ? *fixed_timing : none, domain, nullptr, nullptr);
}

}  // namespace tltl
