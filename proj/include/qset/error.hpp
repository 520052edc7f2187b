#ifndef QSET_ERROR_HPP
#define QSET_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qset {

// Every failure the engine reports carries one of these codes. The string
// form (see error_code_name) is part of the CLI contract and must not change.
enum class ErrorCode {
    invalid_argument,
    syntax_error,
    unbound_name,
    redefinition,
    type_mismatch,
    not_a_member,
    count_exceeded,
    not_a_subqset,
    bound_exceeded,
    malformed_relation,
    precondition_violated,
    hypothesis_violated,
    insufficient_universe,
    dangling_label,
    unknown_observable,
    not_in_domain,
    invalid_model,
    overflow,
    unsupported,
    io_error,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qset

#endif
