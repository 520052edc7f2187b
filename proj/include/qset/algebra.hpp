#ifndef QSET_ALGEBRA_HPP
#define QSET_ALGEBRA_HPP

#include <cstdint>
#include <functional>

#include "qset/kernel.hpp"

namespace qset {

/**
 * A separation formula. It only ever sees a canonical shape, so it cannot
 * tell indiscernible elements apart; it must be free of side effects since
 * the engine may call it any number of times in any order.
 */
using ClassPredicate = std::function<bool(const Shape&)>;

inline constexpr std::uint64_t default_power_bound = 16;

Qset empty();

// [s*n]. n == 0 is rejected (use empty()).
Qset micro_collection(const Species& s, std::uint64_t n);

// Counts add; Dinge stay at multiplicity 1.
Qset union_of(const Qset& x, const Qset& y);

// Classwise minimum of counts.
Qset intersection(const Qset& x, const Qset& y);

// Smallest qset holding one instance of each; [x*2] when x ≡ y (unless x
// is a Ding, which collapses to [x]).
Qset pair(const Shape& x, const Shape& y);

Qset separation(const Qset& z, const ClassPredicate& alpha);

// [x]_z: the indiscernibles from x that belong to z.
Qset class_of(const Shape& x, const Qset& z);

// ⟦x⟧_z. Throws not_a_member when x ∉ z.
Qset strong_singleton(const Shape& x, const Qset& z);

// k elements of x's class in z. Throws count_exceeded when z holds fewer.
Qset choose(const Shape& x, std::uint64_t k, const Qset& z);

// Countwise inclusion: every class of x occurs in y at least as often.
bool subqset(const Qset& x, const Qset& y);

// Throws not_a_subqset unless subqset(y, x).
Qset difference(const Qset& x, const Qset& y);

// Elements are the sub-qsets of x; a sub-qset taking k_i of the n_i
// elements of each class carries multiplicity Π C(n_i, k_i).
// Throws bound_exceeded when x.size() > max_qc.
Qset power(const Qset& x, std::uint64_t max_qc = default_power_bound);

// ⟨x, y⟩_z = [[x]_z, [x,y]_z]_z. Throws not_a_member.
Qset weak_pair(const Shape& x, const Shape& y, const Qset& z);

// z × w = [⟨x, y⟩_{z∪w} : x ∈ z ∧ y ∈ w], one class per class combination.
Qset cartesian_product(const Qset& z, const Qset& w);

/**
 * True iff every element of f is a weak pair ⟨u, v⟩_{A∪B} with u ∈ A and
 * v ∈ B, every class of A occurs as a first component, and no first
 * component is paired with two discernible second components.
 * Throws malformed_relation if some element of f is not such a weak pair.
 */
bool is_quasi_function(const Qset& f, const Qset& a, const Qset& b);

} // namespace qset

#endif
