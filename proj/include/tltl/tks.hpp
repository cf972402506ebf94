#pragma once
// Timeout Kripke structures: locations labelled with propositions and static
// timing values, delay edges (the clock jumps to the earliest timeout) and
// discrete edges (the earliest timeouts are raised by some delta).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tltl/witness.hpp"

namespace tltl {

struct Location {
    std::string id;
    std::vector<std::string> props;  // sorted
    std::map<std::string, std::int64_t> valuation;

    friend bool operator==(const Location&, const Location&) = default;
};

struct DelayEdge {
    std::size_t from = 0, to = 0;

    friend bool operator==(const DelayEdge&, const DelayEdge&) = default;
};

struct DiscreteEdge {
    std::size_t from = 0, to = 0;
    std::int64_t lo = 1;
    std::optional<std::int64_t> hi;  // nullopt is the open-ended '*'

    friend bool operator==(const DiscreteEdge&, const DiscreteEdge&) = default;
};

struct Tks {
    std::vector<Location> locations;
    std::vector<std::size_t> initial;
    std::size_t timeout_count = 1;
    std::vector<std::int64_t> start_timeouts;  // one per timeout, default all 0
    std::vector<std::string> timing_vars;      // declared names
    std::optional<std::int64_t> bound;         // declared M
    std::vector<DelayEdge> delay;
    std::vector<DiscreteEdge> discrete;

    std::optional<std::size_t> find(const std::string& id) const;
    std::vector<std::size_t> delay_from(std::size_t loc) const;
    std::vector<std::size_t> discrete_from(std::size_t loc) const;

    friend bool operator==(const Tks&, const Tks&) = default;
};

enum class TksErrorKind { FormatError, DanglingEdge, BadRange, UnknownVariable };

const char* to_string(TksErrorKind k);

class TksError : public std::runtime_error {
public:
    TksError(TksErrorKind kind, std::size_t line, const std::string& what)
        : std::runtime_error(what), kind_(kind), line_(line) {}
    TksErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }  // 1-based; 0 when not tied to a line

private:
    TksErrorKind kind_;
    std::size_t line_;
};

/// Parses and validates the text format; see docs/tks-format.md.
Tks parse_tks(const std::string& text);
Tks load_tks(const std::string& path);
/// Canonical text; parse_tks(print_tks(k)) == k.
std::string print_tks(const Tks& k);
/// Throws TksError on any broken invariant.
void validate_tks(const Tks& k);

/// Longest simple path from an initial location, optionally closed by one edge
/// back onto itself, weighting discrete edges by their upper bound ('*' edges
/// by the lower bound) and delay edges by zero.
/// Throws std::length_error beyond `cap` partial paths.
std::int64_t max_path_delay(const Tks& k, std::size_t cap = 1'000'000);
/// The declared bound, else the path delay (never below any timing value or
/// start timeout).
std::int64_t effective_bound(const Tks& k);

struct TksStep {
    enum class Fired { Start, Delay, Discrete };
    std::size_t location = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::vector<std::int64_t> timeouts;
    Fired fired = Fired::Start;  // how the step was entered
    std::size_t edge = 0;        // index into delay or discrete
    std::int64_t delta = 0;
};

struct TksComputation {
    std::vector<TksStep> steps;
};

class Deadlock : public std::runtime_error {
public:
    Deadlock(std::string location, std::size_t step, TksComputation partial)
        : std::runtime_error("deadlock in location " + location + " at step " + std::to_string(step)),
          location_(std::move(location)), step_(step), partial_(std::move(partial)) {}
    const std::string& location() const { return location_; }
    std::size_t step() const { return step_; }
    const TksComputation& partial() const { return partial_; }

private:
    std::string location_;
    std::size_t step_;
    TksComputation partial_;
};

/// First step of a run from an initial location.
TksStep initial_step(const Tks& k, std::size_t location);
/// All minimal timeouts raised by delta.
std::vector<std::int64_t> raise_minimal(const std::vector<std::int64_t>& timeouts, std::int64_t delta);

/// A random run. Delta is uniform over [l, m], or l plus a geometric offset
/// for '*' edges. Throws Deadlock when no transition is enabled.
TksComputation simulate(const Tks& k, std::size_t steps, std::uint64_t seed);

/// Independent check of the run semantics; returns one line per problem.
std::vector<std::string> check_computation(const Tks& k, const TksComputation& c);

/// A run that provably repeats: the configuration at `steps[loop]` recurs
/// after the last step, shifted in time by `shift` > 0.
struct TksLasso {
    TksComputation run;
    std::size_t loop = 0;
    std::int64_t shift = 0;
};

/// Random run until a configuration repeats up to a time shift.
std::optional<TksLasso> simulate_lasso(const Tks& k, std::size_t max_steps, std::uint64_t seed);

/// Timed state sequence of a lasso run with the given timing values.
TimedWitness lasso_witness(const Tks& k, const TksLasso& l, const TimingMap& timing);

/// Simplified TTA startup model for n nodes with slot length lambda.
Tks tta_example(int n_nodes, std::int64_t slot);

}  // namespace tltl
