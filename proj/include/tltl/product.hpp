#pragma once
// Model checking TLTL specifications over timeout Kripke structures.
//
// The symbolic product pairs tableau atoms of the negated specification with
// locations. When it contains a fulfilling lasso, an explicit integer-time
// search over (atom, location, pending timeouts, clock) looks for a run that
// realizes one, which becomes the counterexample.

#include <optional>
#include <string>
#include <vector>

#include "tltl/tableau.hpp"
#include "tltl/tks.hpp"
#include "tltl/witness.hpp"

namespace tltl {

struct ProductNode {
    std::uint32_t atom = 0;
    std::size_t location = 0;

    friend bool operator==(const ProductNode&, const ProductNode&) = default;
};

struct ProductGraph {
    std::vector<ProductNode> nodes;
    std::vector<std::vector<std::uint32_t>> delay;     // per node
    std::vector<std::vector<std::uint32_t>> discrete;  // per node
    std::vector<std::uint32_t> initial;
    std::vector<bool> alive;  // can reach an accepting component

    std::size_t edge_count() const;
};

/// Reachable part of the product of a (pruned) tableau for the negated
/// specification and k.
ProductGraph build_product(const Tableau& t, const Tks& k);

/// Fulfilling lasso through the product: a path from an initial node into a
/// component that fulfils every until and contains a delay edge.
struct ProductLasso {
    std::vector<std::uint32_t> prefix, cycle;
};
std::optional<ProductLasso> find_product_lasso(const Tableau& t, ProductGraph& g);

enum class McVerdict { Holds, Fails, ConcretizationFailure };

const char* to_string(McVerdict v);

struct McOptions {
    std::optional<std::int64_t> bound;       // M; defaults to the model's effective bound
    std::size_t max_states = 2'000'000;      // explicit search budget
    std::size_t max_valuations = 100'000;    // combinations of unbound timing variables
};

struct McStats {
    std::size_t atoms = 0;
    std::size_t surviving_atoms = 0;
    std::size_t product_nodes = 0;
    std::size_t product_edges = 0;
    std::size_t explicit_states = 0;
    std::size_t valuations = 0;
    std::size_t prune_iterations = 0;
    std::int64_t bound = 0;
};

struct McResult {
    McVerdict verdict = McVerdict::Holds;
    std::optional<TimedWitness> counterexample;
    TksLasso run;  // the concrete run behind the counterexample
    TimingMap timing;
    std::vector<ProductNode> symbolic_prefix, symbolic_cycle;
    std::string warning;
    McStats stats;
};

McResult model_check(const Tks& k, const QuantifiedFormula& spec, const McOptions& opts = {});

}  // namespace tltl
