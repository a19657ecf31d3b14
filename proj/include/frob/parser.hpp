#pragma once

#include "frob/multipoly.hpp"

#include <string>

namespace frob {

struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Grammar: integers, rationals p/q, variables [A-Za-z][A-Za-z0-9_]*,
// operators + - * / ^, parentheses; implicit multiplication is not accepted.
// '^' takes a non-negative integer exponent. 'sqrt5' is reserved and only
// valid in a Q(sqrt5) ring. '/' builds rational functions; callers that
// need a polynomial go through parse_poly.
RationalFunction parse_expression(const std::string& text, const RingPtr& ring);

MultiPoly parse_poly(const std::string& text, const RingPtr& ring);

}  // namespace frob
