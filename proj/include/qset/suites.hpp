#ifndef QSET_SUITES_HPP
#define QSET_SUITES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qset/algebra.hpp"

namespace qset {

// Randomized/exhaustive verification suites behind `qset check`.
enum class Suite { axioms, oracle, permutation, theorem71, nonsubst };

std::string_view to_string(Suite s) noexcept;
std::optional<Suite> parse_suite(std::string_view name) noexcept;

struct SuiteOptions {
    std::optional<std::size_t> size;    // suite-specific default when unset
    std::optional<std::size_t> trials;  // suite-specific default when unset
    std::uint64_t seed = 1;
    std::uint64_t power_bound = default_power_bound;
};

struct SuiteCheck {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string note;  // first failure, or a summary

    // A negative control passes when it fails.
    bool expect_failure = false;

    bool pass() const noexcept { return expect_failure ? failures > 0 : failures == 0; }
    std::string line() const;
};

struct SuiteResult {
    Suite suite;
    std::vector<SuiteCheck> checks;

    bool pass() const noexcept;
};

SuiteResult run_suite(Suite suite, const SuiteOptions& options);

} // namespace qset

#endif
