#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qladder/fp.hpp"

namespace qladder {

enum class Axis { x, y };

// A bivariate power series over F_p, known exactly on all monomials of
// total degree < precision().  The table is dense and triangular: row d
// holds the homogeneous slice of degree d, indexed by the x-exponent.
//
// Precision is data.  Every operation computes the precision its result
// is guaranteed to, so knowledge can shrink but never silently lies:
//   add/sub            min(Na, Nb)
//   mul                min(Na + ord(b), Nb + ord(a))   (>= min(Na, Nb))
//   monomial divide    N - a - b
//   substitute         N   (images must have positive order)
//   frobenius_power    p * N
// Values are immutable once built; all functions are pure.
class TruncatedSeries {
public:
    TruncatedSeries(std::uint32_t p, int precision);

    static TruncatedSeries zero(std::uint32_t p, int precision);
    static TruncatedSeries constant(std::uint32_t p, int precision, std::uint64_t value);
    static TruncatedSeries monomial(std::uint32_t p, int precision, int xe, int ye,
                                    std::uint64_t coeff = 1);

    std::uint32_t modulus() const { return p_; }
    int precision() const { return precision_; }

    // Coefficient of x^xe y^ye; throws precision_error for xe+ye >= precision.
    std::uint32_t coeff_raw(int xe, int ye) const;
    FpElement coeff(int xe, int ye) const { return FpElement(coeff_raw(xe, ye), p_); }
    std::uint32_t constant_term() const { return coeff_raw(0, 0); }

    void set_coeff(int xe, int ye, std::uint64_t value);
    void add_to_coeff(int xe, int ye, std::uint64_t value);

    bool is_zero() const;
    // Order of the known part; nullopt when zero below precision.
    std::optional<int> order() const;

    // Same values, knowledge clipped to new_precision (must be <= precision).
    TruncatedSeries truncated(int new_precision) const;

    // Calls fn(xe, ye, c) on every stored nonzero coefficient, degree by
    // degree, x-exponent ascending within a degree.
    template <typename F>
    void for_each_nonzero(F&& fn) const {
        for (int d = 0; d < precision_; ++d) {
            const std::size_t base = tri(d);
            for (int i = 0; i <= d; ++i) {
                std::uint32_t c = table_[base + i];
                if (c != 0) fn(i, d - i, c);
            }
        }
    }

    friend bool identical(const TruncatedSeries& a, const TruncatedSeries& b);

private:
    static std::size_t tri(int d) { return static_cast<std::size_t>(d) * (d + 1) / 2; }
    std::size_t index(int xe, int ye) const { return tri(xe + ye) + xe; }

    std::uint32_t p_;
    int precision_;
    std::vector<std::uint32_t> table_;
};

// Lowest homogeneous part of a nonzero series: coeffs[i] multiplies
// x^i y^(order - i).
struct LeadingForm {
    int order = 0;
    std::uint32_t modulus = 0;
    std::vector<std::uint32_t> coeffs;

    FpElement coeff(int xe) const { return FpElement(coeffs.at(xe), modulus); }
    int term_count() const;
};

// --- ring operations -------------------------------------------------------

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries negate(const TruncatedSeries& a);
TruncatedSeries scalar_mul(const FpElement& c, const TruncatedSeries& a);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_pow(const TruncatedSeries& a, unsigned n);

// a^p by the characteristic-p rule (x^i y^j -> x^pi y^pj, coefficients
// fixed by Frobenius on F_p).  Exact below p * precision.
TruncatedSeries frobenius_power(const TruncatedSeries& a);

// Inverse of a unit series, degree-by-degree back substitution.
TruncatedSeries series_invert_unit(const TruncatedSeries& a);

// Throws zero_series_error when the series vanishes below its precision.
LeadingForm ord_and_leading_form(const TruncatedSeries& a);

// Exact division by x^a y^b; throws inexact_division_error naming the
// first monomial outside the corner.
TruncatedSeries monomial_divide_exact(const TruncatedSeries& f, int a, int b);

// --- substitution ----------------------------------------------------------

struct Substitution {
    TruncatedSeries x_image, y_image;
};

Substitution identity_substitution(std::uint32_t p, int precision);

// f(x_image, y_image).  Ring homomorphism; images must have zero constant
// term so truncation by total degree stays valid.
TruncatedSeries substitute(const TruncatedSeries& f, const Substitution& s);

// --- Weierstrass tools ------------------------------------------------------

TruncatedSeries transpose_vars(const TruncatedSeries& f);

struct WeierstrassFactors {
    TruncatedSeries unit;  // unit series
    TruncatedSeries poly;  // x^degree (when it fits the table) plus lower
                           // coefficients of positive order in the other axis
    int degree = 0;        // authoritative distinguished degree
    Axis axis = Axis::x;
};

// f = unit * poly with poly monic of `degree` in the distinguished
// variable.  Requires f nonzero on the distinguished axis at this
// precision.  Result precisions: for degree d = 0 or 1 the factors are
// determined below N resp. N-1; for d >= 2 the guaranteed zone shrinks to
// N - 2d + 2 (poly) and N - 2d + 1 (unit), clamped to at least 1.
WeierstrassFactors weierstrass_prepare(const TruncatedSeries& f, Axis axis);

// For w of order 1 whose leading form is solvable for `solve_for`
// (nonzero coefficient on that variable): the unique g with zero constant
// term, in the other variable only, with w(g(y), y) == 0 (resp. mirrored).
TruncatedSeries solve_coordinate(const TruncatedSeries& w, Axis solve_for = Axis::x);

// True iff f lies in (w) at the working precision; false answers are
// definitive, true means "divisible at this precision".
bool divides_prepared(const TruncatedSeries& w, const TruncatedSeries& f);

// --- structure helpers ------------------------------------------------------

struct MonomialFactor {
    int xe = 0, ye = 0;          // maximal monomial dividing every known term
    TruncatedSeries cofactor;    // f / (x^xe y^ye)
};
// f must be nonzero below precision.
MonomialFactor extract_monomial_factor(const TruncatedSeries& f);

// f / w for w a unit or a regular element of order 1 (solvable leading
// form); nullopt when the division leaves a visible remainder.
std::optional<TruncatedSeries> try_exact_divide(const TruncatedSeries& f,
                                                const TruncatedSeries& w);

// Keep only the pure-axis terms (x^k or y^k), same precision.
TruncatedSeries restrict_to_axis(const TruncatedSeries& f, Axis axis);

// Pure-axis series divided by var^k, exact; throws if any term is lower.
TruncatedSeries axis_shift_down(const TruncatedSeries& f, Axis axis, int k);

bool equal_below(const TruncatedSeries& a, const TruncatedSeries& b, int bound);
bool identical(const TruncatedSeries& a, const TruncatedSeries& b);

std::string to_string(const TruncatedSeries& f);

}  // namespace qladder
