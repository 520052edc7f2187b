#ifndef QSET_QCARD_HPP
#define QSET_QCARD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "qset/algebra.hpp"
#include "qset/kernel.hpp"

namespace qset {

/**
 * The quasi-cardinal of a qset. The theory admits collections without one;
 * `absent()` represents that case, but no constructor in this engine ever
 * produces it.
 */
class QuasiCardinal {
public:
    constexpr QuasiCardinal() = default;
    constexpr explicit QuasiCardinal(std::uint64_t value) : value_(value) {}
    static constexpr QuasiCardinal absent() { return QuasiCardinal(); }

    constexpr bool defined() const noexcept { return value_.has_value(); }
    std::uint64_t value() const;

    std::string to_string() const;

    friend constexpr bool operator==(const QuasiCardinal&, const QuasiCardinal&) = default;

private:
    std::optional<std::uint64_t> value_;
};

QuasiCardinal qc(const Qset& x);

enum class Axiom { qc1, qc2, qc3, qc4, qc5, qc6, qc7, star };

std::string_view to_string(Axiom axiom) noexcept;
std::optional<Axiom> parse_axiom(std::string_view name) noexcept;

// Second argument of an axiom instance: nothing, another qset, or a cardinal β.
using AxiomOperand = std::variant<std::monostate, Qset, std::uint64_t>;

struct AxiomReport {
    Axiom axiom;
    std::string instance;  // e.g. "x=[e*2] y=[p*3]"
    std::string equation = {};  // e.g. "qc(x ∪ y) = qc(x) + qc(y)"
    std::string lhs;
    std::string relation = "=";
    std::string rhs;
    bool pass = false;
    std::optional<Qset> witness;  // qc3 only

    // "qc6 x=[e*2] y=[p*3]: 5 = 2 + 3 pass"
    std::string line() const;
};

/**
 * Instantiates one quasi-cardinal postulate (or Theorem ⋆, qc(x − y) =
 * qc(x) − qc(y)) and evaluates both sides.
 *
 * Operand requirements: qc1, qc2, qc7 take x alone; qc3 takes β; qc4 and
 * star take y ⊆ x; qc5 takes y with x ⊂ y; qc6 takes y with no class shared
 * with x. Violations throw Error(precondition_violated).
 */
AxiomReport check_qc_axiom(Axiom axiom, const Qset& x, const AxiomOperand& operand = {},
                           std::uint64_t power_bound = default_power_bound);

// Greedy qc3 witness: take classes of x in canonical order until β is reached.
Qset qc3_witness(const Qset& x, std::uint64_t beta);

} // namespace qset

#endif
