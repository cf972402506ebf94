#include "tltl/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace tltl {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::optional<Rational> parse_rational(std::string_view text) {
    auto num = [](std::string_view s, bool allow_sign) -> std::optional<std::int64_t> {
        if (s.empty()) return std::nullopt;
        if (!allow_sign && (s[0] == '-' || s[0] == '+')) return std::nullopt;
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
        return v;
    };
    auto slash = text.find('/');
    auto p = num(text.substr(0, slash), true);
    if (!p) return std::nullopt;
    if (slash == std::string_view::npos) return Rational(*p);
    auto q = num(text.substr(slash + 1), false);
    if (!q || *q == 0) return std::nullopt;
    return Rational(*p, *q);
}

namespace {

Json state_json(const TimedState& s) {
    Json j;
    if (s.atom_id) j["atom"] = *s.atom_id;
    j["x"] = to_string(s.x);
    j["y"] = to_string(s.y);
    Json t = Json::object();
    for (const auto& [k, v] : s.timing) t[k] = to_string(v);
    j["timing"] = t;
    j["props"] = s.props;
    if (!s.location.empty()) j["location"] = s.location;
    if (!s.timeouts.empty()) j["timeouts"] = s.timeouts;
    if (!s.step.empty()) j["step"] = s.step;
    return j;
}

Rational rat(const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a string");
    auto r = parse_rational(j.get<std::string>());
    if (!r) throw std::invalid_argument("bad rational '" + j.get<std::string>() + "'");
    return *r;
}

TimedState state_from(const Json& j) {
    TimedState s;
    try {
        if (j.contains("atom")) s.atom_id = j.at("atom").get<std::uint32_t>();
        s.x = rat(j.at("x"));
        s.y = rat(j.at("y"));
        for (const auto& [k, v] : j.at("timing").items()) s.timing[k] = rat(v);
        s.props = j.at("props").get<std::vector<std::string>>();
        std::sort(s.props.begin(), s.props.end());
        if (j.contains("location")) s.location = j.at("location").get<std::string>();
        if (j.contains("timeouts")) s.timeouts = j.at("timeouts").get<std::vector<std::int64_t>>();
        if (j.contains("step")) s.step = j.at("step").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad witness state: ") + e.what());
    }
    return s;
}

}  // namespace

std::string witness_table(const TimedWitness& w) {
    std::ostringstream os;
    bool mc = false;
    for (std::size_t i = 0; i < w.size(); ++i) mc = mc || !w.at(i).location.empty();
    os << "  #  atom        x        y  props";
    if (mc) os << "  location  timeouts  step";
    os << "\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        TimedState s = w.at(i);
        std::string props;
        for (const auto& p : s.props) props += (props.empty() ? "" : ",") + p;
        char mark = i >= w.prefix.size() ? '*' : ' ';
        char line[160];
        std::snprintf(line, sizeof line, "%c%2zu %5s %8s %8s  {%s}", mark, i,
                      s.atom_id ? std::to_string(*s.atom_id).c_str() : "-", to_string(s.x).c_str(),
                      to_string(s.y).c_str(), props.c_str());
        os << line;
        if (mc) {
            std::string to;
            for (auto v : s.timeouts) to += (to.empty() ? "" : ",") + std::to_string(v);
            os << "  " << s.location << "  [" << to << "]  " << s.step;
        }
        os << "\n";
    }
    const TimingMap& tm = w.prefix.empty() ? w.cycle.front().timing : w.prefix.front().timing;
    if (!tm.empty()) {
        os << "timing:";
        for (const auto& [k, v] : tm) os << " " << k << "=" << to_string(v);
        os << "\n";
    }
    os << "* repeats forever, x and y raised by " << to_string(w.shift) << " per lap\n";
    return os.str();
}

Json to_json(const TimedWitness& w) {
    Json j;
    j["prefix"] = Json::array();
    for (const auto& s : w.prefix) j["prefix"].push_back(state_json(s));
    j["cycle"] = Json::array();
    for (const auto& s : w.cycle) j["cycle"].push_back(state_json(s));
    j["shift"] = to_string(w.shift);
    return j;
}

TimedWitness witness_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("prefix") || !j.contains("cycle") || !j.contains("shift"))
        throw std::invalid_argument("witness needs prefix, cycle and shift");
    TimedWitness w;
    for (const auto& s : j.at("prefix")) w.prefix.push_back(state_from(s));
    for (const auto& s : j.at("cycle")) w.cycle.push_back(state_from(s));
    w.shift = rat(j.at("shift"));
    return w;
}

Json to_json(const Lasso& l) { return Json{{"prefix", l.prefix}, {"cycle", l.cycle}}; }

Json to_json(const TableauStats& s) {
    return Json{{"closure_classes", s.closure_classes}, {"atoms", s.atoms},   {"edges", s.edges},
                {"surviving", s.surviving},             {"prune_iterations", s.prune_iterations}};
}

}  // namespace tltl
