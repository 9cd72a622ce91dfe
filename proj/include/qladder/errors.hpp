#pragma once

#include <stdexcept>
#include <string>

namespace qladder {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Two values with different moduli met in one operation.
struct modulus_mismatch_error : error {
    using error::error;
};

// Inversion of zero in F_p.
struct division_by_zero_error : error {
    using error::error;
};

// Inversion of a series with zero constant term.
struct non_unit_error : error {
    using error::error;
};

// An operation that needs the order of a series got one that is
// identically zero below its precision.
struct zero_series_error : error {
    using error::error;
};

// Monomial division hit a term outside the requested corner; the message
// names the offending monomial.
struct inexact_division_error : error {
    using error::error;
};

// A substitution image had a nonzero constant term, or was otherwise
// unusable as a chart substituent.
struct substitution_error : error {
    using error::error;
};

// Not enough known coefficients to perform or decide something.
struct precision_error : error {
    using error::error;
};

// A series failed to match the normal form an extraction step requires.
// In ladder context this is fatal: it would contradict the construction.
struct normal_form_error : error {
    using error::error;
};

// The closed-form and direct block computations disagreed, or a certified
// value failed its defining equation.  Carries a diff in the message.
struct consistency_error : error {
    using error::error;
};

// value_of ran out of ladder: the element is not yet unit * monomial at
// the deepest available frame.  level reports that frame.
struct depth_error : error {
    depth_error(const std::string& what, int level_) : error(what), level(level_) {}
    int level;
};

}  // namespace qladder
