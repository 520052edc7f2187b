#ifndef QSET_KERNEL_HPP
#define QSET_KERNEL_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qset {

/**
 * A kind of m-atom. Two m-atoms are indiscernible exactly when their species
 * labels are equal. Labels double as identifiers in the textual syntax, so
 * they are restricted to [A-Za-z_][A-Za-z0-9_]*.
 */
class Species {
public:
    explicit Species(std::string label);

    const std::string& label() const noexcept { return label_; }

    friend bool operator==(const Species&, const Species&) = default;
    friend auto operator<=>(const Species&, const Species&) = default;

private:
    std::string label_;
};

bool is_identifier(std::string_view text) noexcept;

class Qset;

/**
 * An element of a quasi-set described up to indistinguishability: an m-atom
 * of some species, a named M-atom, or a nested quasi-set.
 *
 * Shapes are immutable and cheap to copy (nested bodies are shared).
 */
class Shape {
public:
    enum class Kind { micro, macro, qset };

    static Shape micro(Species species);
    static Shape micro(std::string label) { return micro(Species(std::move(label))); }
    static Shape macro(std::string id);
    static Shape of(Qset body);

    Kind kind() const noexcept { return kind_; }
    bool is_micro() const noexcept { return kind_ == Kind::micro; }
    bool is_macro() const noexcept { return kind_ == Kind::macro; }
    bool is_qset() const noexcept { return kind_ == Kind::qset; }

    // Precondition: is_micro().
    Species species() const;
    // Precondition: is_macro(). Returned without the leading '@'.
    std::string macro_id() const;
    // Precondition: is_qset().
    const Qset& body() const;

    // Canonical serialization; equal texts iff indiscernible shapes.
    const std::string& text() const noexcept;

    // True if this shape is an m-atom or transitively contains one.
    bool has_micro() const noexcept;

    friend bool operator==(const Shape& a, const Shape& b) noexcept { return a.text() == b.text(); }

private:
    Shape(Kind kind, std::string text, std::shared_ptr<const Qset> body);

    Kind kind_;
    std::string text_;  // empty for qset shapes; their text lives in the body
    std::shared_ptr<const Qset> body_;
};

/// One ≡-class of a quasi-set together with how many elements it holds.
struct Entry {
    Shape shape;
    std::uint64_t count;
};

/**
 * A finite quasi-set in canonical form: a list of pairwise non-indiscernible
 * shapes, each with a positive multiplicity, sorted by canonical text.
 * Classical shapes (Dinge) always carry multiplicity 1.
 */
class Qset {
public:
    Qset();

    // Merges indiscernible shapes (summing counts, collapsing Dinge to 1)
    // and sorts. Throws Error(invalid_argument) on a zero count.
    static Qset canonical(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t class_count() const noexcept { return entries_.size(); }

    // Σ counts; the quasi-cardinal.
    std::uint64_t size() const noexcept { return size_; }

    // Count of the class indiscernible from x, 0 if absent.
    std::uint64_t count_of(const Shape& x) const;

    const std::string& text() const noexcept { return text_; }
    bool has_micro() const noexcept { return has_micro_; }

    friend bool operator==(const Qset& a, const Qset& b) noexcept { return a.text_ == b.text_; }

private:
    explicit Qset(std::vector<Entry> sorted_merged);

    std::vector<Entry> entries_;
    std::uint64_t size_ = 0;
    std::string text_;
    bool has_micro_ = false;
};

enum class IdentityVerdict { identical, distinct, undefined };

std::string_view to_string(IdentityVerdict verdict) noexcept;

/// The unary predicates of the theory that a shape may satisfy.
enum class Predicate : unsigned {
    m = 1u << 0,  // m-atom
    M = 1u << 1,  // M-atom
    Z = 1u << 2,  // set: no m-atom in the transitive closure
    Q = 1u << 3,  // qset
    P = 1u << 4,  // pure qset
    D = 1u << 5,  // Ding: M-atom or set
    E = 1u << 6,  // qset of qsets
};

class PredicateSet {
public:
    constexpr PredicateSet() = default;
    constexpr PredicateSet(std::initializer_list<Predicate> ps) {
        for (auto p : ps)
            bits_ |= static_cast<unsigned>(p);
    }

    constexpr bool contains(Predicate p) const noexcept { return (bits_ & static_cast<unsigned>(p)) != 0; }
    constexpr void insert(Predicate p) noexcept { bits_ |= static_cast<unsigned>(p); }

    friend constexpr bool operator==(PredicateSet, PredicateSet) = default;

    // "{Z, Q, P, D, E}" in the fixed order m M Z Q P D E.
    std::string to_string() const;

private:
    unsigned bits_ = 0;
};

bool parse_predicate(std::string_view name, Predicate& out) noexcept;

PredicateSet classify(const Shape& x);

// Dinge: M-atoms and qsets with no m-atom anywhere below them.
bool is_ding(const Shape& x) noexcept;

bool indist(const Shape& x, const Shape& y);
bool indist(const Qset& x, const Qset& y);

// Extensional identity. Undefined whenever either side is or contains an
// m-atom.
IdentityVerdict identity(const Shape& x, const Shape& y);

// Class-level membership: some element of z is indiscernible from x.
bool member(const Shape& x, const Qset& z);

} // namespace qset

template <>
struct std::hash<qset::Qset> {
    std::size_t operator()(const qset::Qset& q) const noexcept { return std::hash<std::string>{}(q.text()); }
};

template <>
struct std::hash<qset::Shape> {
    std::size_t operator()(const qset::Shape& s) const noexcept { return std::hash<std::string>{}(s.text()); }
};

#endif
