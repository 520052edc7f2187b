#ifndef QSET_QUANTUM_HPP
#define QSET_QUANTUM_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qset/kernel.hpp"

namespace qset::quantum {

enum class Statistics { maxwell_boltzmann, bose_einstein, fermi_dirac };

std::string_view to_string(Statistics s) noexcept;
// Accepts "mb", "be", "fd" and the long hyphenated names.
std::optional<Statistics> parse_statistics(std::string_view name) noexcept;

/// Occupation numbers n_1..n_k of k modes, summing to the particle count.
struct OccupancyState {
    std::vector<std::uint64_t> counts;

    std::uint64_t particles() const noexcept;
    std::string to_string() const;  // "(2,1)"

    friend bool operator==(const OccupancyState&, const OccupancyState&) = default;
};

inline constexpr std::uint64_t default_decomposition_bound = 1'000'000;

// All ordered decompositions n = n_1 + ... + n_k, first component
// descending: (3,2) gives (3,0) (2,1) (1,2) (0,3).
// Throws invalid_argument for k = 0, bound_exceeded past `bound` states.
std::vector<OccupancyState> weyl_decompositions(std::uint64_t n, std::uint64_t k,
                                                std::uint64_t bound = default_decomposition_bound);

// MB = k^n, BE = C(n+k-1, n), FD = C(k, n). Throws overflow past 64 bits.
std::uint64_t count_states(std::uint64_t n, std::uint64_t k, Statistics s);

std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

// Two particles (1, 2) over two modes (A, B). Amplitudes are on the product
// basis ψ₁ᴬ⊗ψ₂ᴬ, ψ₁ᴬ⊗ψ₂ᴮ, ψ₁ᴮ⊗ψ₂ᴬ, ψ₁ᴮ⊗ψ₂ᴮ.
struct TwoParticleState {
    std::string name;  // "AA", "BB", "(AB+BA)/√2", ...
    std::vector<double> amplitudes;
    bool surplus = false;  // formally expressible but not physically accessible
};

struct TwoParticleStates {
    std::vector<TwoParticleState> accessible;
    std::vector<TwoParticleState> excluded;
};

TwoParticleStates accessible_two_particle_states(Statistics s);

// Relabels the particles: the amplitude of ψ₁ˣ⊗ψ₂ʸ moves to ψ₁ʸ⊗ψ₂ˣ.
std::vector<double> swap_particles(const std::vector<double>& amplitudes);

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;

struct Eigenspace {
    double eigenvalue;
    std::vector<StateVector> basis;  // orthonormal
};

struct Observable {
    std::string name;
    std::vector<Eigenspace> spectrum;
};

/// A closed interval [lo, hi]; points are degenerate intervals.
struct Interval {
    double lo;
    double hi;
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

// Parses "a:b", "a" (a point), with "-inf"/"inf" accepted for endpoints.
Interval parse_interval(std::string_view text);

struct Binding {
    std::string parameter;
    Qset target;  // the bound class or subqset of the domain
    std::uint64_t quasi_cardinal;
};

/**
 * A finite-dimensional quantum structure over a domain of systems: a unit
 * state vector and observables given by their spectral decomposition.
 * The constructor validates: unit norm within 1e-12, pairwise orthonormal
 * eigenvectors within 1e-10, distinct eigenvalues, and eigenspaces that
 * span the whole space.
 */
class QuantumModel {
public:
    QuantumModel(Qset systems, StateVector state, std::vector<Observable> observables);

    const Qset& systems() const noexcept { return systems_; }
    const StateVector& state() const noexcept { return state_; }
    const std::vector<Observable>& observables() const noexcept { return observables_; }
    const std::vector<Binding>& bindings() const noexcept { return bindings_; }
    std::size_t dimension() const noexcept { return state_.size(); }

    // Throws Error(unknown_observable).
    const Observable& observable(std::string_view name) const;

    // Parameters address classes or subqsets of the domain, never
    // individuals. Throws Error(not_in_domain).
    QuantumModel bind(const std::string& parameter, const Shape& target) const;
    QuantumModel bind(const std::string& parameter, const Qset& target) const;

    static QuantumModel from_json(std::string_view text);

private:
    Qset systems_;
    StateVector state_;
    std::vector<Observable> observables_;
    std::vector<Binding> bindings_;
};

// Born rule: Σ over eigenvalues λ ∈ Δ of ‖P_λ ψ‖².
double probability(const QuantumModel& model, std::string_view observable, const std::vector<Interval>& delta);

} // namespace qset::quantum

#endif
