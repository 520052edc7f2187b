#include "qset/error.hpp"

namespace qset {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::syntax_error: return "syntax-error";
    case ErrorCode::unbound_name: return "unbound-name";
    case ErrorCode::redefinition: return "redefinition";
    case ErrorCode::type_mismatch: return "type-mismatch";
    case ErrorCode::not_a_member: return "not-a-member";
    case ErrorCode::count_exceeded: return "count-exceeded";
    case ErrorCode::not_a_subqset: return "not-a-subqset";
    case ErrorCode::bound_exceeded: return "bound-exceeded";
    case ErrorCode::malformed_relation: return "malformed-relation";
    case ErrorCode::precondition_violated: return "precondition-violated";
    case ErrorCode::hypothesis_violated: return "hypothesis-violated";
    case ErrorCode::insufficient_universe: return "insufficient-universe";
    case ErrorCode::dangling_label: return "dangling-label";
    case ErrorCode::unknown_observable: return "unknown-observable";
    case ErrorCode::not_in_domain: return "not-in-domain";
    case ErrorCode::invalid_model: return "invalid-model";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::io_error: return "io-error";
    }
    return "unknown";
}

} // namespace qset
