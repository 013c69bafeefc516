#pragma once

#include <stdexcept>
#include <string>

namespace cmdegkit {

// Adaptive quadrature ran out of subdivision budget before meeting tolerance.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested evaluation would exceed the representable double range.
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Unknown function id passed to a catalog-dispatching checker.
struct catalog_error : std::runtime_error {
    explicit catalog_error(const std::string& what) : std::runtime_error(what) {}
};

// Bisection preconditions violated: the endpoints do not bracket a
// pass/fail transition.
struct bracket_error : std::runtime_error {
    explicit bracket_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cmdegkit
