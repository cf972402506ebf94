#include "tltl/tks.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

namespace tltl {

const char* to_string(TksErrorKind k) {
    switch (k) {
        case TksErrorKind::FormatError: return "FormatError";
        case TksErrorKind::DanglingEdge: return "DanglingEdge";
        case TksErrorKind::BadRange: return "BadRange";
        case TksErrorKind::UnknownVariable: return "UnknownVariable";
    }
    return "?";
}

std::optional<std::size_t> Tks::find(const std::string& id) const {
    for (std::size_t i = 0; i < locations.size(); ++i)
        if (locations[i].id == id) return i;
    return std::nullopt;
}

std::vector<std::size_t> Tks::delay_from(std::size_t loc) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < delay.size(); ++e)
        if (delay[e].from == loc) out.push_back(e);
    return out;
}

std::vector<std::size_t> Tks::discrete_from(std::size_t loc) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < discrete.size(); ++e)
        if (discrete[e].from == loc) out.push_back(e);
    return out;
}

namespace {

const std::set<std::string> keywords = {"locations", "init", "timeouts", "timing", "bound",
                                        "delay",     "discrete", "let", "start"};

bool is_ident(const std::string& s) {
    static const std::regex re("[A-Za-z_][A-Za-z0-9_]*");
    return std::regex_match(s, re) && !keywords.count(s);
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

std::int64_t number(const std::string& s, std::size_t line) {
    static const std::regex re("[0-9]{1,15}");
    if (!std::regex_match(s, re)) throw TksError(TksErrorKind::FormatError, line, "expected a number, got '" + s + "'");
    return std::stoll(s);
}

TksError err(TksErrorKind k, std::size_t line, const std::string& msg) {
    return TksError(k, line, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Tks parse_tks(const std::string& text) {
    Tks k;
    k.timeout_count = 0;
    enum class Section { None, Locations, Delay, Discrete } section = Section::None;
    bool declared_timing = false, saw_timeouts = false;
    std::vector<std::string> init_names;
    std::size_t init_line = 0;
    struct Pending {
        std::string from, to;
        std::size_t line;
        bool discrete;
        std::int64_t lo;
        std::optional<std::int64_t> hi;
    };
    std::vector<Pending> edges;
    std::vector<std::pair<std::string, std::size_t>> lets;  // variable, line

    static const std::regex delay_re(R"(^(\w+)\s*->\s*(\w+)$)");
    static const std::regex discrete_re(R"(^(\w+)\s*-\[\s*(\S+?)\s*,\s*(\S+?)\s*\]->\s*(\w+)$)");

    std::istringstream in(text);
    std::string raw;
    for (std::size_t ln = 1; std::getline(in, raw); ++ln) {
        std::string line = raw.substr(0, raw.find('#'));
        auto w = words(line);
        if (w.empty()) continue;
        line = line.substr(line.find_first_not_of(" \t"));
        line = line.substr(0, line.find_last_not_of(" \t\r") + 1);
        const std::string& head = w[0];
        if (head == "locations" || head == "delay" || head == "discrete") {
            if (w.size() != 1) throw err(TksErrorKind::FormatError, ln, "section header '" + head + "' takes no arguments");
            section = head == "locations" ? Section::Locations : head == "delay" ? Section::Delay : Section::Discrete;
            continue;
        }
        if (head == "timeouts") {
            if (saw_timeouts) throw err(TksErrorKind::FormatError, ln, "duplicate timeouts line");
            saw_timeouts = true;
            if (w.size() < 2) throw err(TksErrorKind::FormatError, ln, "timeouts needs a count");
            k.timeout_count = static_cast<std::size_t>(number(w[1], ln));
            if (k.timeout_count == 0) throw err(TksErrorKind::BadRange, ln, "at least one timeout is required");
            k.start_timeouts.assign(k.timeout_count, 0);
            if (w.size() > 2) {
                if (w[2] != "start" || w.size() != 3 + k.timeout_count)
                    throw err(TksErrorKind::FormatError, ln, "expected 'start' followed by one value per timeout");
                for (std::size_t i = 0; i < k.timeout_count; ++i) k.start_timeouts[i] = number(w[3 + i], ln);
            }
            section = Section::None;
            continue;
        }
        if (head == "timing") {
            declared_timing = true;
            for (std::size_t i = 1; i < w.size(); ++i) {
                if (!is_ident(w[i])) throw err(TksErrorKind::FormatError, ln, "bad variable name '" + w[i] + "'");
                k.timing_vars.push_back(w[i]);
            }
            section = Section::None;
            continue;
        }
        if (head == "bound") {
            if (w.size() != 2) throw err(TksErrorKind::FormatError, ln, "bound takes one number");
            k.bound = number(w[1], ln);
            section = Section::None;
            continue;
        }
        if (head == "init") {
            init_names.insert(init_names.end(), w.begin() + 1, w.end());
            init_line = ln;
            section = Section::None;
            continue;
        }

        switch (section) {
            case Section::None: throw err(TksErrorKind::FormatError, ln, "line outside any section");
            case Section::Locations: {
                // id [: props...] [let v = n, ...]
                std::string spaced;
                for (char c : line) {
                    if (c == ':' || c == '=' || c == ',') spaced += std::string(" ") + c + " ";
                    else spaced += c;
                }
                auto t = words(spaced);
                Location loc;
                loc.id = t[0];
                if (!is_ident(loc.id)) throw err(TksErrorKind::FormatError, ln, "bad location id '" + loc.id + "'");
                std::size_t i = 1;
                if (i < t.size() && t[i] == ":") {
                    for (++i; i < t.size() && t[i] != "let"; ++i) {
                        if (!is_ident(t[i])) throw err(TksErrorKind::FormatError, ln, "bad proposition '" + t[i] + "'");
                        loc.props.push_back(t[i]);
                    }
                }
                if (i < t.size()) {
                    if (t[i] != "let") throw err(TksErrorKind::FormatError, ln, "expected ':' or 'let' after the id");
                    ++i;
                    for (;;) {
                        if (i + 2 >= t.size() || t[i + 1] != "=")
                            throw err(TksErrorKind::FormatError, ln, "expected 'name = value'");
                        if (!is_ident(t[i])) throw err(TksErrorKind::FormatError, ln, "bad variable name '" + t[i] + "'");
                        if (loc.valuation.count(t[i])) throw err(TksErrorKind::FormatError, ln, "duplicate binding");
                        loc.valuation[t[i]] = number(t[i + 2], ln);
                        lets.emplace_back(t[i], ln);
                        i += 3;
                        if (i == t.size()) break;
                        if (t[i] != ",") throw err(TksErrorKind::FormatError, ln, "expected ',' between bindings");
                        ++i;
                    }
                }
                std::sort(loc.props.begin(), loc.props.end());
                loc.props.erase(std::unique(loc.props.begin(), loc.props.end()), loc.props.end());
                if (k.find(loc.id)) throw err(TksErrorKind::FormatError, ln, "duplicate location '" + loc.id + "'");
                k.locations.push_back(std::move(loc));
                break;
            }
            case Section::Delay: {
                std::smatch m;
                if (!std::regex_match(line, m, delay_re)) throw err(TksErrorKind::FormatError, ln, "expected 'a -> b'");
                edges.push_back({m[1], m[2], ln, false, 0, 0});
                break;
            }
            case Section::Discrete: {
                std::smatch m;
                if (!std::regex_match(line, m, discrete_re))
                    throw err(TksErrorKind::FormatError, ln, "expected 'a -[l,m]-> b' or 'a -[l,*]-> b'");
                Pending p{m[1], m[4], ln, true, number(m[2], ln), std::nullopt};
                if (m[3] != "*") p.hi = number(m[3], ln);
                if (p.lo < 1) throw err(TksErrorKind::BadRange, ln, "discrete increments start at 1");
                if (p.hi && *p.hi < p.lo) throw err(TksErrorKind::BadRange, ln, "empty increment range");
                edges.push_back(p);
                break;
            }
        }
    }

    if (!saw_timeouts) throw err(TksErrorKind::FormatError, 0, "missing timeouts line");
    if (!declared_timing) {
        for (const auto& [v, _] : lets)
            if (std::find(k.timing_vars.begin(), k.timing_vars.end(), v) == k.timing_vars.end()) k.timing_vars.push_back(v);
    } else {
        for (const auto& [v, ln] : lets)
            if (std::find(k.timing_vars.begin(), k.timing_vars.end(), v) == k.timing_vars.end())
                throw err(TksErrorKind::UnknownVariable, ln, "undeclared timing variable '" + v + "'");
    }
    for (const auto& name : init_names) {
        auto id = k.find(name);
        if (!id) throw err(TksErrorKind::DanglingEdge, init_line, "unknown initial location '" + name + "'");
        k.initial.push_back(*id);
    }
    for (const auto& p : edges) {
        auto a = k.find(p.from), b = k.find(p.to);
        if (!a || !b)
            throw err(TksErrorKind::DanglingEdge, p.line, "unknown location '" + (a ? p.to : p.from) + "'");
        if (p.discrete) k.discrete.push_back({*a, *b, p.lo, p.hi});
        else k.delay.push_back({*a, *b});
    }
    validate_tks(k);
    return k;
}

Tks load_tks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TksError(TksErrorKind::FormatError, 0, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tks(ss.str());
}

void validate_tks(const Tks& k) {
    auto fail = [](TksErrorKind kind, const std::string& msg) { return TksError(kind, 0, msg); };
    if (k.locations.empty()) throw fail(TksErrorKind::FormatError, "no locations");
    if (k.initial.empty()) throw fail(TksErrorKind::FormatError, "no initial location");
    if (k.timeout_count == 0) throw fail(TksErrorKind::BadRange, "at least one timeout is required");
    if (k.start_timeouts.size() != k.timeout_count) throw fail(TksErrorKind::FormatError, "start values do not match the timeout count");
    for (auto v : k.start_timeouts)
        if (v < 0) throw fail(TksErrorKind::BadRange, "negative start timeout");
    const std::size_t n = k.locations.size();
    for (auto i : k.initial)
        if (i >= n) throw fail(TksErrorKind::DanglingEdge, "initial location out of range");
    for (const auto& e : k.delay)
        if (e.from >= n || e.to >= n) throw fail(TksErrorKind::DanglingEdge, "delay edge out of range");
    for (const auto& e : k.discrete) {
        if (e.from >= n || e.to >= n) throw fail(TksErrorKind::DanglingEdge, "discrete edge out of range");
        if (e.lo < 1 || (e.hi && *e.hi < e.lo)) throw fail(TksErrorKind::BadRange, "bad increment range");
    }
    for (const auto& loc : k.locations)
        for (const auto& [v, val] : loc.valuation) {
            if (std::find(k.timing_vars.begin(), k.timing_vars.end(), v) == k.timing_vars.end())
                throw fail(TksErrorKind::UnknownVariable, "undeclared timing variable '" + v + "'");
            if (val < 0 || (k.bound && val > *k.bound))
                throw fail(TksErrorKind::BadRange, "value of " + v + " at " + loc.id + " lies outside [0, M]");
        }
    // timing values are fixed by the initial location for the whole run
    for (auto s0 : k.initial) {
        std::vector<bool> seen(n, false);
        std::deque<std::size_t> work{s0};
        seen[s0] = true;
        while (!work.empty()) {
            std::size_t s = work.front();
            work.pop_front();
            for (const auto& [v, val] : k.locations[s].valuation) {
                auto it = k.locations[s0].valuation.find(v);
                if (it == k.locations[s0].valuation.end() || it->second != val)
                    throw fail(TksErrorKind::BadRange, "location " + k.locations[s].id + " rebinds " + v +
                                                           " on a run from " + k.locations[s0].id);
            }
            auto push = [&](std::size_t t) {
                if (!seen[t]) {
                    seen[t] = true;
                    work.push_back(t);
                }
            };
            for (const auto& e : k.delay)
                if (e.from == s) push(e.to);
            for (const auto& e : k.discrete)
                if (e.from == s) push(e.to);
        }
    }
}

std::string print_tks(const Tks& k) {
    std::ostringstream os;
    os << "timeouts " << k.timeout_count;
    if (std::any_of(k.start_timeouts.begin(), k.start_timeouts.end(), [](auto v) { return v != 0; })) {
        os << " start";
        for (auto v : k.start_timeouts) os << " " << v;
    }
    os << "\n";
    if (!k.timing_vars.empty()) {
        os << "timing";
        for (const auto& v : k.timing_vars) os << " " << v;
        os << "\n";
    }
    if (k.bound) os << "bound " << *k.bound << "\n";
    os << "locations\n";
    for (const auto& loc : k.locations) {
        os << "  " << loc.id;
        if (!loc.props.empty()) {
            os << " :";
            for (const auto& p : loc.props) os << " " << p;
        }
        if (!loc.valuation.empty()) {
            os << " let ";
            bool first = true;
            for (const auto& [v, val] : loc.valuation) {
                os << (first ? "" : ", ") << v << " = " << val;
                first = false;
            }
        }
        os << "\n";
    }
    os << "init";
    for (auto i : k.initial) os << " " << k.locations[i].id;
    os << "\n";
    if (!k.delay.empty()) {
        os << "delay\n";
        for (const auto& e : k.delay) os << "  " << k.locations[e.from].id << " -> " << k.locations[e.to].id << "\n";
    }
    if (!k.discrete.empty()) {
        os << "discrete\n";
        for (const auto& e : k.discrete) {
            os << "  " << k.locations[e.from].id << " -[" << e.lo << ",";
            if (e.hi) os << *e.hi;
            else os << "*";
            os << "]-> " << k.locations[e.to].id << "\n";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

std::int64_t max_path_delay(const Tks& k, std::size_t cap) {
    const std::size_t n = k.locations.size();
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> out(n);
    for (const auto& e : k.delay) out[e.from].push_back({e.to, 0});
    for (const auto& e : k.discrete) out[e.from].push_back({e.to, e.hi ? *e.hi : e.lo});
    std::vector<bool> on_path(n, false);
    std::size_t partial = 0;
    std::int64_t best = 0;
    std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t v, std::int64_t sum) {
        if (++partial > cap) throw std::length_error("path enumeration exceeds " + std::to_string(cap) + " partial paths");
        best = std::max(best, sum);
        on_path[v] = true;
        for (auto [w, c] : out[v]) {
            if (!on_path[w]) dfs(w, sum + c);
            else best = std::max(best, sum + c);  // closes a cycle
        }
        on_path[v] = false;
    };
    for (auto s : k.initial) dfs(s, 0);
    return best;
}

std::int64_t effective_bound(const Tks& k) {
    if (k.bound) return *k.bound;
    std::int64_t m = 0;
    try {
        m = max_path_delay(k);
    } catch (const std::length_error&) {
        // no simple path is longer than all edges together
        for (const auto& e : k.discrete) m += e.hi ? *e.hi : e.lo;
    }
    for (const auto& loc : k.locations)
        for (const auto& [_, v] : loc.valuation) m = std::max(m, v);
    for (auto v : k.start_timeouts) m = std::max(m, v);
    return m;
}

// ---------------------------------------------------------------------------

TksStep initial_step(const Tks& k, std::size_t location) {
    TksStep s;
    s.location = location;
    s.timeouts = k.start_timeouts;
    s.x = 0;
    s.y = *std::min_element(s.timeouts.begin(), s.timeouts.end());
    return s;
}

std::vector<std::int64_t> raise_minimal(const std::vector<std::int64_t>& timeouts, std::int64_t delta) {
    std::int64_t lo = *std::min_element(timeouts.begin(), timeouts.end());
    std::vector<std::int64_t> out = timeouts;
    for (auto& v : out)
        if (v == lo) v += delta;
    return out;
}

namespace {

// One transition out of `cur`; nullopt when none is enabled.
std::optional<TksStep> step_from(const Tks& k, const TksStep& cur, std::mt19937_64& rng) {
    TksStep nx;
    if (cur.x < cur.y) {
        auto opts = k.delay_from(cur.location);
        if (opts.empty()) return std::nullopt;
        std::size_t e = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
        nx.location = k.delay[e].to;
        nx.x = cur.y;
        nx.timeouts = cur.timeouts;
        nx.fired = TksStep::Fired::Delay;
        nx.edge = e;
    } else {
        auto opts = k.discrete_from(cur.location);
        if (opts.empty()) return std::nullopt;
        std::size_t e = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
        const DiscreteEdge& d = k.discrete[e];
        std::int64_t delta = d.lo;
        if (d.hi) delta = std::uniform_int_distribution<std::int64_t>(d.lo, *d.hi)(rng);
        else delta += std::geometric_distribution<std::int64_t>(0.5)(rng);
        nx.location = d.to;
        nx.x = cur.x;
        nx.timeouts = raise_minimal(cur.timeouts, delta);
        nx.fired = TksStep::Fired::Discrete;
        nx.edge = e;
        nx.delta = delta;
    }
    nx.y = *std::min_element(nx.timeouts.begin(), nx.timeouts.end());
    return nx;
}

std::size_t pick_initial(const Tks& k, std::mt19937_64& rng) {
    return k.initial[std::uniform_int_distribution<std::size_t>(0, k.initial.size() - 1)(rng)];
}

}  // namespace

TksComputation simulate(const Tks& k, std::size_t steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    TksComputation c;
    if (steps == 0) return c;
    c.steps.push_back(initial_step(k, pick_initial(k, rng)));
    while (c.steps.size() < steps) {
        auto nx = step_from(k, c.steps.back(), rng);
        if (!nx) throw Deadlock(k.locations[c.steps.back().location].id, c.steps.size() - 1, c);
        c.steps.push_back(std::move(*nx));
    }
    return c;
}

std::vector<std::string> check_computation(const Tks& k, const TksComputation& c) {
    std::vector<std::string> bad;
    auto at = [](std::size_t i) { return "step " + std::to_string(i) + ": "; };
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const TksStep& s = c.steps[i];
        if (s.location >= k.locations.size()) {
            bad.push_back(at(i) + "location out of range");
            continue;
        }
        if (s.timeouts.size() != k.timeout_count) {
            bad.push_back(at(i) + "wrong number of timeouts");
            continue;
        }
        if (s.y != *std::min_element(s.timeouts.begin(), s.timeouts.end())) bad.push_back(at(i) + "y is not the minimal timeout");
        if (s.x > s.y) bad.push_back(at(i) + "clock beyond the minimal timeout");
        if (i == 0) {
            if (std::find(k.initial.begin(), k.initial.end(), s.location) == k.initial.end())
                bad.push_back(at(i) + "run does not start in an initial location");
            if (s.x != 0) bad.push_back(at(i) + "clock does not start at 0");
            if (s.timeouts != k.start_timeouts) bad.push_back(at(i) + "timeouts differ from the start values");
            if (s.fired != TksStep::Fired::Start) bad.push_back(at(i) + "first step must be the start");
            continue;
        }
        const TksStep& p = c.steps[i - 1];
        switch (s.fired) {
            case TksStep::Fired::Start: bad.push_back(at(i) + "start in the middle of a run"); break;
            case TksStep::Fired::Delay: {
                if (s.edge >= k.delay.size() || k.delay[s.edge].from != p.location || k.delay[s.edge].to != s.location)
                    bad.push_back(at(i) + "no such delay edge");
                if (!(p.x < p.y)) bad.push_back(at(i) + "delay while a timeout is due");
                if (s.x != p.y) bad.push_back(at(i) + "delay must move the clock to the minimal timeout");
                if (s.timeouts != p.timeouts) bad.push_back(at(i) + "timeouts change during a delay");
                break;
            }
            case TksStep::Fired::Discrete: {
                if (s.edge >= k.discrete.size() || k.discrete[s.edge].from != p.location ||
                    k.discrete[s.edge].to != s.location) {
                    bad.push_back(at(i) + "no such discrete edge");
                    break;
                }
                const DiscreteEdge& d = k.discrete[s.edge];
                if (p.x != p.y) bad.push_back(at(i) + "discrete step before the timeout is due");
                if (s.x != p.x) bad.push_back(at(i) + "clock moves on a discrete step");
                if (s.delta < d.lo || (d.hi && s.delta > *d.hi)) bad.push_back(at(i) + "increment outside the edge range");
                if (p.timeouts.size() == s.timeouts.size() && s.timeouts != raise_minimal(p.timeouts, s.delta))
                    bad.push_back(at(i) + "timeouts not raised as the edge demands");
                break;
            }
        }
    }
    return bad;
}

std::optional<TksLasso> simulate_lasso(const Tks& k, std::size_t max_steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    TksLasso l;
    auto key = [](const TksStep& s) {
        std::vector<std::int64_t> v{static_cast<std::int64_t>(s.location)};
        for (auto t : s.timeouts) v.push_back(t - s.x);
        return v;
    };
    std::map<std::vector<std::int64_t>, std::size_t> seen;
    TksStep cur = initial_step(k, pick_initial(k, rng));
    for (std::size_t i = 0; i < max_steps; ++i) {
        auto [it, fresh] = seen.emplace(key(cur), i);
        if (!fresh) {
            l.loop = it->second;
            l.shift = cur.x - l.run.steps[l.loop].x;
            return l;
        }
        l.run.steps.push_back(cur);
        auto nx = step_from(k, cur, rng);
        if (!nx) throw Deadlock(k.locations[cur.location].id, i, l.run);
        cur = std::move(*nx);
    }
    return std::nullopt;
}

TimedWitness lasso_witness(const Tks& k, const TksLasso& l, const TimingMap& timing) {
    TimedWitness w;
    w.shift = Rational(l.shift);
    for (std::size_t i = 0; i < l.run.steps.size(); ++i) {
        const TksStep& s = l.run.steps[i];
        TimedState t;
        t.x = Rational(s.x);
        t.y = Rational(s.y);
        t.timing = timing;
        t.props = k.locations[s.location].props;
        t.location = k.locations[s.location].id;
        t.timeouts = s.timeouts;
        switch (s.fired) {
            case TksStep::Fired::Start: t.step = "start"; break;
            case TksStep::Fired::Delay: t.step = "delay"; break;
            case TksStep::Fired::Discrete: t.step = "discrete +" + std::to_string(s.delta); break;
        }
        (i < l.loop ? w.prefix : w.cycle).push_back(std::move(t));
    }
    return w;
}

// ---------------------------------------------------------------------------

Tks tta_example(int n_nodes, std::int64_t slot) {
    if (n_nodes < 1 || n_nodes > 4 || slot < 1) throw std::invalid_argument("tta_example needs 1..4 nodes and a positive slot");
    const std::int64_t N = n_nodes;
    enum Phase { Init, Listen, Cold, Active };
    const char* tag = "ilca";
    auto listen_inc = [&](int i) { return (2 * N + i - 1) * slot; };
    auto cold_inc = [&](int i) { return (N + i - 1) * slot; };
    const std::int64_t round = N * slot;

    Tks k;
    k.timeout_count = static_cast<std::size_t>(n_nodes);
    k.start_timeouts.assign(k.timeout_count, 0);
    using Config = std::vector<int>;
    auto code = [&](const Config& c) {
        std::string s;
        for (int p : c) s += tag[p];
        return s;
    };
    auto props = [&](const Config& c) {
        std::vector<std::string> out;
        for (int i = 0; i < n_nodes; ++i) out.push_back(std::string(1, tag[c[i]]) + std::to_string(i + 1));
        std::sort(out.begin(), out.end());
        return out;
    };
    // each configuration has a waiting location (a timeout pending) and an
    // expired one (the earliest timeouts are due)
    std::map<Config, std::pair<std::size_t, std::size_t>> ids;
    std::deque<Config> work;
    auto intern = [&](const Config& c) {
        auto it = ids.find(c);
        if (it != ids.end()) return it->second;
        std::size_t w = k.locations.size();
        k.locations.push_back({"w_" + code(c), props(c), {}});
        k.locations.push_back({"e_" + code(c), props(c), {}});
        k.delay.push_back({w, w + 1});
        work.push_back(c);
        return ids[c] = {w, w + 1};
    };
    Config start(n_nodes, Init);
    k.initial.push_back(intern(start).second);
    while (!work.empty()) {
        Config c = work.front();
        work.pop_front();
        std::size_t from = ids[c].second;
        for (int i = 0; i < n_nodes; ++i) {
            std::vector<std::pair<int, std::int64_t>> moves;
            switch (c[i]) {
                case Init: moves = {{Listen, listen_inc(i + 1)}}; break;
                case Listen: moves = {{Cold, cold_inc(i + 1)}, {Active, round}}; break;
                case Cold: moves = {{Active, round}, {Listen, listen_inc(i + 1)}}; break;
                case Active: moves = {{Active, round}}; break;
            }
            for (auto [phase, inc] : moves) {
                Config d = c;
                d[i] = phase;
                std::size_t to = intern(d).first;
                k.discrete.push_back({from, to, inc, inc});
            }
        }
    }
    validate_tks(k);
    return k;
}

}  // namespace tltl
