#ifndef QSET_LABELLED_HPP
#define QSET_LABELLED_HPP

// Classical hidden-label model of quasi-sets.
//
// A classical machine cannot host individuals without identity, so this
// module gives every m-atom a hidden label and then shows that nothing
// observable depends on it: `erase` forgets the labels and lands on the
// canonical Qset, and the permutation tester checks that relabelling the
// inputs of an operation never changes the erased result.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qset/generate.hpp"
#include "qset/kernel.hpp"

namespace qset::labelled {

class InstanceHandle;

namespace detail {
std::uint32_t token(InstanceHandle h) noexcept;
InstanceHandle make_handle(std::uint32_t token) noexcept;
} // namespace detail

/// Opaque reference to one individual. Comparable as a token; the species is
/// available through the owning universe.
class InstanceHandle {
public:
    friend bool operator==(InstanceHandle, InstanceHandle) = default;
    friend auto operator<=>(InstanceHandle, InstanceHandle) = default;

    std::string to_string() const;  // "#3"

private:
    explicit InstanceHandle(std::uint32_t token) : token_(token) {}

    std::uint32_t token_;

    friend std::uint32_t detail::token(InstanceHandle) noexcept;
    friend InstanceHandle detail::make_handle(std::uint32_t) noexcept;
};

class LabelledUniverse {
public:
    LabelledUniverse() = default;
    explicit LabelledUniverse(std::vector<Species> individuals, std::set<std::string> macro_atoms = {});

    std::size_t size() const noexcept { return species_.size(); }
    std::vector<InstanceHandle> handles() const;
    std::vector<InstanceHandle> of_species(const Species& s) const;

    bool owns(InstanceHandle h) const noexcept;
    // Throws Error(dangling_label) for handles outside this universe.
    const Species& species(InstanceHandle h) const;

    const std::set<std::string>& macro_atoms() const noexcept { return macros_; }
    bool has_macro(const std::string& id) const { return macros_.contains(id); }

    // Species labels in order of first appearance.
    std::vector<Species> species_list() const;

private:
    std::vector<Species> species_;
    std::set<std::string> macros_;
};

struct MacroRef {
    std::string id;
    friend auto operator<=>(const MacroRef&, const MacroRef&) = default;
};

class LabelledQset;

struct Nested {
    std::shared_ptr<const LabelledQset> set;
};

bool operator==(const Nested& a, const Nested& b);
std::strong_ordering operator<=>(const Nested& a, const Nested& b);

using Element = std::variant<InstanceHandle, MacroRef, Nested>;

/// A classical, well-founded set of labelled elements (no duplicates).
class LabelledQset {
public:
    LabelledQset() = default;
    explicit LabelledQset(std::vector<Element> elements);

    const std::vector<Element>& elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(const Element& e) const;

    friend bool operator==(const LabelledQset& a, const LabelledQset& b) { return a.elements_ == b.elements_; }
    friend std::strong_ordering operator<=>(const LabelledQset& a, const LabelledQset& b);

private:
    std::vector<Element> elements_;
};

Element nested(LabelledQset x);
std::string to_string(const Element& e);
std::string to_string(const LabelledQset& x);

// Individuals occurring anywhere in x.
std::set<InstanceHandle> individuals(const LabelledQset& x);

// ---------------------------------------------------------------- erasure

Shape erase(const Element& e, const LabelledUniverse& u);
// Throws Error(dangling_label) if x mentions a handle or M-atom outside u.
Qset erase(const LabelledQset& x, const LabelledUniverse& u);

// Builds a universe while handing out fresh individuals; also lifts
// canonical qsets into labelled ones, each individual used exactly once.
class UniverseBuilder {
public:
    InstanceHandle add(const Species& s);
    void add_macro(const std::string& id);
    LabelledQset lift(const Qset& x);
    LabelledUniverse build() const;

private:
    std::vector<Species> species_;
    std::set<std::string> macros_;
};

struct Lifted {
    LabelledUniverse universe;
    LabelledQset set;
};

// erase(lift(x).set, lift(x).universe) == x.
Lifted lift(const Qset& x);

// ---------------------------------------------------------------- label-level operations

// Individual-level membership.
bool contains(const LabelledQset& x, InstanceHandle h);
bool is_subset(const LabelledQset& x, const LabelledQset& y);

LabelledQset union_of(const LabelledQset& x, const LabelledQset& y);
LabelledQset intersection(const LabelledQset& x, const LabelledQset& y);
// Throws Error(not_a_subqset) unless y ⊆ x.
LabelledQset difference(const LabelledQset& x, const LabelledQset& y);
// The predicate sees erased shapes only.
LabelledQset separation(const LabelledQset& z, const std::function<bool(const Shape&)>& alpha,
                        const LabelledUniverse& u);
LabelledQset class_of(const Element& x, const LabelledQset& z, const LabelledUniverse& u);
// Lowest elements (in token order) of x's class in z.
LabelledQset choose(const Element& x, std::size_t k, const LabelledQset& z, const LabelledUniverse& u);
LabelledQset strong_singleton(const Element& x, const LabelledQset& z, const LabelledUniverse& u);
// All subsets of x. Throws bound_exceeded above max_elements.
LabelledQset power(const LabelledQset& x, std::size_t max_elements = 16);
LabelledQset weak_pair(const Element& x, const Element& y, const LabelledQset& z, const LabelledUniverse& u);
LabelledQset cartesian_product(const LabelledQset& z, const LabelledQset& w, const LabelledUniverse& u);

// ---------------------------------------------------------------- permutations

/// A species-preserving bijection on a universe's individuals.
class Permutation {
public:
    static Permutation identity(const LabelledUniverse& u);
    static Permutation random(const LabelledUniverse& u, Rng& rng);
    // Every species-preserving permutation of u (Π n_s! of them).
    static std::vector<Permutation> all(const LabelledUniverse& u);

    InstanceHandle operator()(InstanceHandle h) const;
    Element operator()(const Element& e) const;
    LabelledQset operator()(const LabelledQset& x) const;

    bool is_identity() const;
    std::string to_string() const;  // "#0->#2 #2->#0"

private:
    std::vector<std::uint32_t> image_;
};

// Whether some species-preserving relabelling of u maps x onto y.
bool relabelling_exists(const LabelledQset& x, const LabelledQset& y, const LabelledUniverse& u);

// ---------------------------------------------------------------- permutation tester

struct LabelledOperation {
    std::string name;
    std::size_t arity;
    // Element arguments are passed as singleton sets.
    std::function<LabelledQset(std::span<const LabelledQset>, const LabelledUniverse&)> apply;
};

// union, intersection, difference, separation (by species, by D), class_of,
// strong_singleton, choose, power, weak_pair, cartesian_product.
const std::vector<LabelledOperation>& registered_operations();

// Negative control: keeps only individuals with even hidden labels.
LabelledOperation leaking_operation();

struct PermutationViolation {
    std::string permutation;
    Qset expected;
    Qset observed;
};

struct PermutationReport {
    std::string operation;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::optional<PermutationViolation> witness;

    bool pass() const noexcept { return violations == 0; }
    std::string line() const;
};

PermutationReport permutation_test(const LabelledOperation& op, std::span<const LabelledQset> args,
                                   const LabelledUniverse& u, std::size_t trials, Rng& rng);

// ---------------------------------------------------------------- theorem checks

struct TheoremReport {
    int proof_case = 0;  // 1: ⟦z⟧_t's element lies outside x; 2: inside
    Qset lhs;            // erase((x − ⟦z⟧_t) ∪ ⟦w⟧_t)
    Qset rhs;            // erase(x)
    bool pass = false;
    std::string line() const;
};

/**
 * Invariance by permutations: builds (x − ⟦z⟧_t) ∪ ⟦w⟧_t at label level and
 * checks it erases to something indiscernible from x.
 * Throws Error(hypothesis_violated) naming the first failed hypothesis:
 * "x ⊆ t", "z ∈ x", "w ∈ t", "w ≡ z", "¬(x = [z]_t)", "w ∉ x".
 */
TheoremReport theorem_permutation_invariance(const LabelledQset& t, const LabelledQset& x, InstanceHandle z,
                                             InstanceHandle w, const LabelledUniverse& u);

struct NonSubstitutivityReport {
    InstanceHandle a;
    InstanceHandle b;
    bool indiscernible = false;         // a ≡ b
    bool a_in_singleton = false;        // a ∈ ⟦a⟧ (label level)
    bool b_in_singleton = false;        // b ∈ ⟦a⟧ (label level)
    bool b_in_singleton_class = false;  // member(b, erase(⟦a⟧)) (class level)
    bool singletons_indiscernible = false;
    Qset singleton;  // erase(⟦a⟧)

    bool pass() const noexcept;
    std::string line() const;
};

// Throws Error(insufficient_universe) when no species has two individuals.
NonSubstitutivityReport non_substitutivity_witness(const LabelledUniverse& u);

// ---------------------------------------------------------------- generators

// All universes of n individuals up to renaming of species (set partitions
// of n labels), species named s0, s1, ...
std::vector<LabelledUniverse> enumerate_universes(std::size_t n);

// All subsets of the universe's individuals, as flat labelled qsets.
std::vector<LabelledQset> enumerate_subsets(const LabelledUniverse& u);

struct LabelledGeneratorOptions {
    int max_depth = 1;
    // Each individual occurs at most once in the whole structure.
    bool linear = false;
    bool use_macros = true;
};

LabelledQset random_labelled(Rng& rng, const LabelledUniverse& u, std::span<const InstanceHandle> pool,
                             const LabelledGeneratorOptions& options = {});

// A random universe of n individuals over at most `species` kinds, with
// M-atoms @a and @b.
LabelledUniverse random_universe(Rng& rng, std::size_t n, std::size_t species = 3);

struct TheoremInstance {
    LabelledUniverse universe;
    LabelledQset t;
    LabelledQset x;
    InstanceHandle z;
    InstanceHandle w;
};

// An instance satisfying every hypothesis of theorem_permutation_invariance,
// over a universe of 2..max_universe individuals.
TheoremInstance random_theorem_instance(Rng& rng, std::size_t max_universe);

} // namespace qset::labelled

#endif
