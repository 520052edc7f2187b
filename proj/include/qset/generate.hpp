#ifndef QSET_GENERATE_HPP
#define QSET_GENERATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qset/kernel.hpp"

namespace qset {

using Rng = std::mt19937_64;

// Random canonical qsets for property checks and the CLI suites.
struct GeneratorOptions {
    std::vector<std::string> species{"e", "p", "n"};
    std::vector<std::string> macros{"a", "b"};
    int max_depth = 3;            // nesting depth of qset shapes
    std::uint64_t max_qc = 12;    // bound on the top-level quasi-cardinal
    std::uint64_t nested_qc = 3;  // bound on each nested body
    std::size_t max_classes = 4;
};

Qset random_qset(Rng& rng, const GeneratorOptions& options = {});

// A uniformly-random countwise subqset of x (each class count drawn in [0, n]).
Qset random_subqset(Rng& rng, const Qset& x);

// A random shape: an atom of either kind or a nested qset.
Shape random_shape(Rng& rng, const GeneratorOptions& options = {});

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi);

} // namespace qset

#endif
