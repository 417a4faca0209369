#pragma once

// Finite binary relations over a declared state space.
//
// A state space is an ordered list of integer variables, each with an
// inclusive range. A state is one value per variable; its canonical index is
// the mixed-radix encoding in declaration order with the last variable
// varying fastest. A relation is semantically a set of (state, state') pairs;
// the representation switches between a row-major bit matrix (when |S|^2 bits
// fit the space's dense budget) and a sorted pair list. All operations treat
// the two representations identically.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relcheck/errors.hpp"

namespace relcheck {

using Int = long long;
using StateIndex = std::uint64_t;
using Pair = std::pair<StateIndex, StateIndex>;

// |S|^2 bits at or under this fits in 8 MiB: dense up to 8192 states.
inline constexpr std::uint64_t kDefaultDenseBudgetBits = 1ull << 26;
// Largest space the exhaustive operations (materialize, denote, agreement)
// will enumerate unless the caller passes a bigger cap.
inline constexpr std::uint64_t kDefaultExhaustiveCap = 1ull << 16;

struct VarDecl {
    std::string name;
    Int lo = 0;
    Int hi = 0;
};

class StateSpace;
using SpacePtr = std::shared_ptr<const StateSpace>;

class StateSpace {
public:
    // Validates names (non-empty, unique), ranges (lo <= hi), and that the
    // state count fits in a 64-bit index.
    static SpacePtr make(std::string name, std::vector<VarDecl> vars,
                         std::uint64_t dense_budget_bits = kDefaultDenseBudgetBits);

    const std::string& name() const { return name_; }
    const std::vector<VarDecl>& vars() const { return vars_; }
    std::size_t var_count() const { return vars_.size(); }
    int slot_of(const std::string& var) const; // -1 if undeclared
    std::uint64_t size() const { return size_; }
    std::uint64_t radix(std::size_t slot) const { return radix_[slot]; }
    bool in_range(std::size_t slot, Int v) const {
        return v >= vars_[slot].lo && v <= vars_[slot].hi;
    }

    bool dense_capable() const { return dense_capable_; }
    std::uint64_t dense_budget_bits() const { return dense_budget_bits_; }

    StateIndex index_of(const std::vector<Int>& values) const;
    std::vector<Int> values_at(StateIndex idx) const;

    // Same variables (names and ranges) and same name.
    bool same_as(const StateSpace& other) const;

    // The space with extra variables appended (they become the
    // fastest-varying index digits). Used for program blocks with locals.
    SpacePtr extend(const std::vector<VarDecl>& locals) const;

    // "name (x:0..6, y:0..6)" for diagnostics.
    std::string describe() const;

private:
    std::string name_;
    std::vector<VarDecl> vars_;
    std::vector<std::uint64_t> radix_;  // hi-lo+1 per variable
    std::vector<std::uint64_t> stride_; // index weight per variable
    std::uint64_t size_ = 1;
    std::uint64_t dense_budget_bits_ = kDefaultDenseBudgetBits;
    bool dense_capable_ = false;
};

// Throws InputError naming both spaces unless they agree structurally.
void ensure_same_space(const SpacePtr& a, const SpacePtr& b, const char* op);

// A set of states: the space plus a sorted, duplicate-free index vector.
// Doubles as the carrier for vectors (A x S) and monotypes (sub-identities).
class StateSet {
public:
    StateSet() = default;
    StateSet(SpacePtr space, std::vector<StateIndex> sorted_unique);
    static StateSet empty(SpacePtr space) { return StateSet(std::move(space), {}); }
    static StateSet full(SpacePtr space); // CapacityError on huge spaces

    const SpacePtr& space() const { return space_; }
    const std::vector<StateIndex>& indices() const { return idx_; }
    std::size_t size() const { return idx_.size(); }
    bool empty_set() const { return idx_.empty(); }
    bool contains(StateIndex s) const;

private:
    SpacePtr space_;
    std::vector<StateIndex> idx_;
};

StateSet set_union(const StateSet& a, const StateSet& b);
StateSet set_intersect(const StateSet& a, const StateSet& b);
StateSet set_difference(const StateSet& a, const StateSet& b);
StateSet set_complement(const StateSet& a); // CapacityError on huge spaces
bool subset_of(const StateSet& a, const StateSet& b);
bool operator==(const StateSet& a, const StateSet& b);

class Relation {
public:
    Relation() = default;

    static Relation empty(SpacePtr space);
    static Relation identity(SpacePtr space);
    static Relation universal(SpacePtr space); // dense-capable spaces only
    static Relation from_pairs(SpacePtr space, std::vector<Pair> pairs);

    const SpacePtr& space() const { return space_; }
    bool dense() const { return dense_; }
    std::uint64_t pair_count() const;
    bool empty_rel() const { return pair_count() == 0; }
    bool contains(StateIndex s, StateIndex t) const;
    std::optional<Pair> first_pair() const; // least (s,t), canonical order

    // Visits pairs in canonical order: by index(s), then index(t).
    void for_each_pair(const std::function<void(StateIndex, StateIndex)>& fn) const;
    std::vector<Pair> pairs() const;

    friend bool operator==(const Relation& a, const Relation& b);
    friend class RelationBuilder;
    friend Relation union_of(const Relation&, const Relation&);
    friend Relation intersect(const Relation&, const Relation&);
    friend Relation difference(const Relation&, const Relation&);
    friend Relation complement(const Relation&);
    friend Relation compose(const Relation&, const Relation&);
    friend Relation converse(const Relation&);
    friend Relation rt_closure(const Relation&);
    friend StateSet domain(const Relation&);
    friend bool is_deterministic(const Relation&);
    friend bool subset_of(const Relation&, const Relation&);
    friend Relation restrict_domain(const Relation&, const StateSet&);
    friend Relation restrict_range(const Relation&, const StateSet&);

private:
    explicit Relation(SpacePtr space);
    std::uint64_t words_per_row() const { return wpr_; }

    SpacePtr space_;
    bool dense_ = false;
    std::uint64_t wpr_ = 0;
    std::vector<std::uint64_t> bits_; // dense: size() rows of wpr_ words
    std::vector<Pair> pairs_;         // sparse: sorted, unique
};

// Incremental construction; picks the representation from the space and
// sorts/dedupes on finish().
class RelationBuilder {
public:
    explicit RelationBuilder(SpacePtr space);
    void add(StateIndex s, StateIndex t);
    Relation finish();

private:
    Relation rel_;
};

Relation union_of(const Relation& a, const Relation& b);
Relation intersect(const Relation& a, const Relation& b);
Relation difference(const Relation& a, const Relation& b);
Relation complement(const Relation& a); // L \ a; dense-capable spaces only

// {(s,t) | exists m: (s,m) in a and (m,t) in b}
Relation compose(const Relation& a, const Relation& b);
Relation converse(const Relation& a);
// Reflexive transitive closure; least fixpoint, reached within |S| rounds.
Relation rt_closure(const Relation& a);
StateSet domain(const Relation& a);
StateSet range_of(const Relation& a); // domain of the converse
bool is_deterministic(const Relation& a);
bool subset_of(const Relation& a, const Relation& b);

// a with rows (resp. columns) outside the set removed. These are the
// intersections with vector(A) and converse(vector(A)) without materializing
// either, so they work on spaces past the dense budget.
Relation restrict_domain(const Relation& a, const StateSet& rows);
Relation restrict_range(const Relation& a, const StateSet& cols);

Relation vector_of(const StateSet& a);  // A x S; dense-capable spaces only
Relation monotype(const StateSet& a);   // {(s,s) | s in A}

// Odometer step through a space's states in index order: values must hold a
// valid state; returns false (leaving values at the lows) after the last one.
bool advance_values(const StateSpace& space, std::vector<Int>& values);

// --- text formats ---------------------------------------------------------
//
// .space file:    space <name>
//                 var <name> : <lo>..<hi>     (one per variable)
//
// relation literal (.rel): header "space <name>" then one pair per line,
//                 (<v1>,...,<vk>) -> (<v1'>,...,<vk'>)
// Serialization is canonical: pairs sorted by (index(s), index(s')), so
// equal relations always serialize byte-identically. A relation on an
// unnamed space serializes with the placeholder header "space _".

SpacePtr parse_space(const std::string& text,
                     std::uint64_t dense_budget_bits = kDefaultDenseBudgetBits);
std::string serialize_space(const StateSpace& space);

Relation parse_relation_literal(const std::string& text, SpacePtr space);
std::string serialize_relation(const Relation& rel);

std::string format_state(const StateSpace& space, StateIndex idx);
std::string format_pair(const StateSpace& space, const Pair& p);
// Parses "(v1,...,vk)" against the space; values must be in range.
StateIndex parse_state_tuple(const std::string& text, const StateSpace& space);

} // namespace relcheck
