#pragma once

#include <cstdint>
#include <string>

#include "qladder/errors.hpp"

namespace qladder {

// Exact arithmetic in the prime field F_p, p an odd prime >= 3.
//
// Elements carry their modulus; mixing moduli throws.  Everything is a
// value, every operation is pure.

bool is_odd_prime(std::uint32_t p);

// Throws std::invalid_argument unless p is an odd prime >= 3.
void require_odd_prime(std::uint32_t p);

struct FpElement {
    std::uint32_t residue = 0;  // always reduced into [0, p)
    std::uint32_t modulus = 0;

    FpElement() = default;
    FpElement(std::uint64_t value, std::uint32_t p);

    bool is_zero() const { return residue == 0; }

    friend bool operator==(const FpElement& a, const FpElement& b) {
        return a.modulus == b.modulus && a.residue == b.residue;
    }
    friend bool operator!=(const FpElement& a, const FpElement& b) { return !(a == b); }
};

// Constructs an element from a possibly negative integer.
FpElement fp_from_int(std::int64_t value, std::uint32_t p);

FpElement fp_add(const FpElement& a, const FpElement& b);
FpElement fp_sub(const FpElement& a, const FpElement& b);
FpElement fp_mul(const FpElement& a, const FpElement& b);
FpElement fp_neg(const FpElement& a);

// Multiplicative inverse; throws division_by_zero_error on 0.
FpElement fp_inv(const FpElement& a);

// a^n with fp_pow(a, 0) == 1, including 0^0 == 1 (empty product).
FpElement fp_pow(const FpElement& a, std::uint64_t n);

// a / b
FpElement fp_div(const FpElement& a, const FpElement& b);

std::string to_string(const FpElement& a);

// Raw-residue helpers used by the series kernel's inner loops.  The series
// object guarantees a single modulus for its whole table, so these skip
// the per-element modulus check.
inline std::uint32_t raw_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::uint32_t raw_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}
inline std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}
std::uint32_t raw_inv(std::uint32_t a, std::uint32_t p);
std::uint32_t raw_pow(std::uint32_t a, std::uint64_t n, std::uint32_t p);

}  // namespace qladder
