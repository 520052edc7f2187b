#ifndef QSET_TESTS_SUPPORT_HPP
#define QSET_TESTS_SUPPORT_HPP

#include <string>

#include "qset/kernel.hpp"
#include "qset/lang.hpp"

namespace qset::testing {

inline Qset q(const std::string& text) {
    return lang::parse_qset(text);
}

inline Shape s(const std::string& text) {
    return Shape::of(q(text));
}

inline Shape m(const std::string& species) {
    return Shape::micro(species);
}

} // namespace qset::testing

#endif
