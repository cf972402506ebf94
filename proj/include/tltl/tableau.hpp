#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "tltl/closure.hpp"
#include "tltl/constraints.hpp"

namespace tltl {

enum class InitialityMode { StartInitial, PaperLiteral };

const char* to_string(InitialityMode m);

/// Truth assignment to the classes of a closure (bit i <-> classes()[i]).
using AtomBits = std::vector<bool>;

/// Atom alphabet of a closure: enumeration of atoms, membership, and the
/// successor relation R. Everything here is a pure function of the closure.
class AtomSpace {
public:
    explicit AtomSpace(Closure cl);

    const Closure& closure() const { return cl_; }

    /// psi in A. Throws std::out_of_range if psi is not in the closure.
    bool holds(const AtomBits& a, Formula psi) const;
    ConstraintSet constraints(const AtomBits& a) const;
    /// Positive members of A, smallest first (omits true and X true).
    std::vector<Formula> positive_members(const AtomBits& a) const;

    /// All atoms, i.e. every assignment satisfying a1-a9.
    std::vector<AtomBits> enumerate() const;
    /// Atoms B with (A, B) in R.
    std::vector<AtomBits> successors(const AtomBits& a) const;
    /// Atoms with x = 0 in one of the two special shapes.
    std::vector<AtomBits> initial_variants() const;

    bool edge(const AtomBits& a, const AtomBits& b) const;

    /// x = 0 together with x = y.
    bool is_initial_eq(const AtomBits& a) const;
    /// x = 0 together with x < y and X(x > 0).
    bool is_initial_lt(const AtomBits& a) const;

    /// Direct check of a1-a9 on an arbitrary assignment.
    bool is_atom(const AtomBits& a) const;

    /// Positive until formulas of A.
    std::vector<std::size_t> until_classes() const { return untils_; }
    /// Literal psi' of the until class (class index, polarity).
    std::pair<std::size_t, bool> until_rhs(std::size_t cls) const;

    std::size_t class_count() const { return cl_.class_count(); }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    struct ClassInfo {
        Kind kind;
        // operands as (class, polarity); unused entries are npos
        std::size_t a = npos, b = npos;
        bool a_pos = true, b_pos = true;
        std::size_t next_self = npos;  // X(psi U psi') for untils
        std::size_t term = npos;       // static: index into terms
        Rel rel = Rel::Lt;
    };

    using Forcing = std::vector<std::int8_t>;  // -1 free, 0, 1
    void search(const Forcing& force, const std::function<void(const AtomBits&)>& emit) const;
    Forcing successor_forcing(const AtomBits& a) const;
    std::size_t lit_class(Formula f, bool* pos) const;
    bool value(const AtomBits& a, std::size_t cls, bool pos) const { return a[cls] == pos; }

    Closure cl_;
    std::vector<ClassInfo> info_;
    std::vector<std::size_t> dynamic_;             // [Lt, Eq] when present
    std::vector<std::array<std::size_t, 3>> term_classes_;  // per term: Lt, Eq, Gt
    std::vector<std::size_t> eventually_gt_;       // per term: class of true U (x > u)
    std::vector<std::size_t> props_, nexts_, derived_, untils_;
    std::size_t true_cls_ = npos, next_true_ = npos;
    std::size_t next_eq_ = npos, next_lt_ = npos;  // X(x=y), X(x<y)
    std::size_t zero_term_ = npos, next_gt_zero_ = npos;
};

struct Atom {
    std::uint32_t id = 0;
    AtomBits bits;
    ConstraintSet constraints;
    bool initial_eq = false;
    bool initial_lt = false;
};

struct SCSComponent {
    std::vector<std::uint32_t> atom_ids;
    bool terminal = false;
    bool self_fulfilling = false;
    bool useless = false;
};

struct SCSReport {
    std::vector<SCSComponent> components;
};

struct Lasso {
    std::vector<std::uint32_t> prefix;
    std::vector<std::uint32_t> cycle;
};

struct TableauStats {
    std::size_t closure_classes = 0;
    std::size_t atoms = 0;
    std::size_t edges = 0;
    std::size_t surviving = 0;
    std::size_t prune_iterations = 0;
};

/// The graph (At, R). Atoms are materialized either exhaustively or by
/// exploration from a set of start atoms.
class Tableau {
public:
    /// Tableau of f over the closure of {f, x = y, x = 0, X(x > 0)}.
    static Tableau build(Formula f, InitialityMode mode, bool exhaustive);

    Tableau(std::shared_ptr<const AtomSpace> space, Formula origin, InitialityMode mode);

    const AtomSpace& space() const { return *space_; }
    std::shared_ptr<const AtomSpace> space_ptr() const { return space_; }
    Formula origin() const { return origin_; }
    InitialityMode mode() const { return mode_; }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const Atom& atom(std::uint32_t id) const { return atoms_.at(id); }
    const std::vector<std::uint32_t>& successors(std::uint32_t id) const { return succ_.at(id); }
    /// Atoms eligible to begin a fulfilling path.
    const std::vector<std::uint32_t>& initial_ids() const { return initial_; }

    bool alive(std::uint32_t id) const { return alive_.at(id); }
    std::size_t alive_count() const;

    /// Adds atom (or finds it), returning its id.
    std::uint32_t add(const AtomBits& bits);
    /// Materializes successors of every atom reachable from `from`.
    void explore(const std::vector<std::uint32_t>& from);
    void materialize_all();

    bool holds(std::uint32_t id, Formula psi) const { return space_->holds(atoms_.at(id).bits, psi); }

    /// SCS classification of the surviving subgraph.
    SCSReport scs_decompose() const;
    /// Iteratively removes useless maximal SCSs; returns the number of rounds.
    /// With an rng, a random nonempty subset of the useless SCSs goes per round.
    std::size_t prune(std::mt19937_64* rng = nullptr);
    /// Same fixpoint computed in one pass: keeps exactly the atoms that can
    /// reach a self-fulfilling SCS. Returns the round count the iterative
    /// algorithm would need.
    std::size_t prune_fast();

    /// Fulfilling lasso from a surviving start atom, if any.
    std::optional<Lasso> find_lasso() const;

    TableauStats stats() const;

    /// Graphviz rendering; removed atoms are dashed.
    std::string to_dot() const;

private:
    std::vector<std::vector<std::uint32_t>> components(std::vector<int>* comp_of) const;
    bool self_fulfilling(const std::vector<std::uint32_t>& comp, const std::vector<int>& comp_of, int c) const;

    std::shared_ptr<const AtomSpace> space_;
    Formula origin_;
    InitialityMode mode_;
    std::vector<Atom> atoms_;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::vector<bool> expanded_;
    std::vector<bool> alive_;
    std::vector<std::uint32_t> initial_;
    std::unordered_map<AtomBits, std::uint32_t> index_;
    std::size_t prune_rounds_ = 0;
};

struct SatResult {
    bool sat = false;
    Lasso lasso;
    TableauStats stats;
};

/// Roots of the closure used for satisfiability of f.
std::vector<Formula> tableau_roots(Formula f);

SatResult check_sat(Formula f, InitialityMode mode = InitialityMode::StartInitial, Tableau* out = nullptr);

}  // namespace tltl
