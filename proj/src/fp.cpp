#include "qladder/fp.hpp"

#include <stdexcept>

namespace qladder {

bool is_odd_prime(std::uint32_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

void require_odd_prime(std::uint32_t p) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument("modulus must be an odd prime >= 3, got " + std::to_string(p));
    }
}

FpElement::FpElement(std::uint64_t value, std::uint32_t p) {
    require_odd_prime(p);
    modulus = p;
    residue = static_cast<std::uint32_t>(value % p);
}

FpElement fp_from_int(std::int64_t value, std::uint32_t p) {
    require_odd_prime(p);
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return FpElement(static_cast<std::uint64_t>(r), p);
}

static void check_same_modulus(const FpElement& a, const FpElement& b) {
    if (a.modulus != b.modulus) {
        throw modulus_mismatch_error("field elements with moduli " + std::to_string(a.modulus) +
                                     " and " + std::to_string(b.modulus));
    }
}

FpElement fp_add(const FpElement& a, const FpElement& b) {
    check_same_modulus(a, b);
    return FpElement(raw_add(a.residue, b.residue, a.modulus), a.modulus);
}

FpElement fp_sub(const FpElement& a, const FpElement& b) {
    check_same_modulus(a, b);
    return FpElement(raw_sub(a.residue, b.residue, a.modulus), a.modulus);
}

FpElement fp_mul(const FpElement& a, const FpElement& b) {
    check_same_modulus(a, b);
    return FpElement(raw_mul(a.residue, b.residue, a.modulus), a.modulus);
}

FpElement fp_neg(const FpElement& a) {
    return FpElement(a.residue == 0 ? 0 : a.modulus - a.residue, a.modulus);
}

std::uint32_t raw_pow(std::uint32_t a, std::uint64_t n, std::uint32_t p) {
    std::uint64_t base = a % p;
    std::uint64_t acc = 1 % p;
    while (n > 0) {
        if (n & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        n >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
}

std::uint32_t raw_inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) {
        throw division_by_zero_error("inverse of 0 in F_" + std::to_string(p));
    }
    // Fermat: a^(p-2) * a == 1 for prime p.
    return raw_pow(a, p - 2, p);
}

FpElement fp_inv(const FpElement& a) {
    return FpElement(raw_inv(a.residue, a.modulus), a.modulus);
}

FpElement fp_pow(const FpElement& a, std::uint64_t n) {
    return FpElement(raw_pow(a.residue, n, a.modulus), a.modulus);
}

FpElement fp_div(const FpElement& a, const FpElement& b) {
    check_same_modulus(a, b);
    return fp_mul(a, fp_inv(b));
}

std::string to_string(const FpElement& a) {
    return std::to_string(a.residue) + " (mod " + std::to_string(a.modulus) + ")";
}

}  // namespace qladder
