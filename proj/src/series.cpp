#include "qladder/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qladder {

namespace {

// Precision is capped so runaway Frobenius chains cannot exhaust memory;
// desk-scale runs stay far below this.
constexpr int kMaxPrecision = 2048;

struct Term {
    int xe, ye;
    std::uint32_t c;
};

std::vector<Term> nonzero_terms(const TruncatedSeries& f) {
    std::vector<Term> out;
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) { out.push_back({xe, ye, c}); });
    return out;
}

void check_same_modulus(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.modulus() != b.modulus()) {
        throw modulus_mismatch_error("series with moduli " + std::to_string(a.modulus()) +
                                     " and " + std::to_string(b.modulus()));
    }
}

int known_order(const TruncatedSeries& f) {
    auto o = f.order();
    return o ? *o : f.precision();
}

}  // namespace

TruncatedSeries::TruncatedSeries(std::uint32_t p, int precision) : p_(p), precision_(precision) {
    require_odd_prime(p);
    if (precision < 1) {
        throw precision_error("series precision must be >= 1, got " + std::to_string(precision));
    }
    if (precision > kMaxPrecision) {
        throw precision_error("series precision " + std::to_string(precision) + " exceeds cap " +
                              std::to_string(kMaxPrecision));
    }
    table_.assign(tri(precision), 0);
}

TruncatedSeries TruncatedSeries::zero(std::uint32_t p, int precision) {
    return TruncatedSeries(p, precision);
}

TruncatedSeries TruncatedSeries::constant(std::uint32_t p, int precision, std::uint64_t value) {
    TruncatedSeries f(p, precision);
    f.set_coeff(0, 0, value);
    return f;
}

TruncatedSeries TruncatedSeries::monomial(std::uint32_t p, int precision, int xe, int ye,
                                          std::uint64_t coeff) {
    TruncatedSeries f(p, precision);
    f.set_coeff(xe, ye, coeff);
    return f;
}

std::uint32_t TruncatedSeries::coeff_raw(int xe, int ye) const {
    if (xe < 0 || ye < 0) throw std::invalid_argument("negative exponent");
    if (xe + ye >= precision_) {
        throw precision_error("coefficient of x^" + std::to_string(xe) + " y^" + std::to_string(ye) +
                              " is beyond precision " + std::to_string(precision_));
    }
    return table_[index(xe, ye)];
}

void TruncatedSeries::set_coeff(int xe, int ye, std::uint64_t value) {
    if (xe < 0 || ye < 0) throw std::invalid_argument("negative exponent");
    if (xe + ye >= precision_) {
        throw precision_error("cannot set coefficient at degree " + std::to_string(xe + ye) +
                              " in a series of precision " + std::to_string(precision_));
    }
    table_[index(xe, ye)] = static_cast<std::uint32_t>(value % p_);
}

void TruncatedSeries::add_to_coeff(int xe, int ye, std::uint64_t value) {
    set_coeff(xe, ye, table_[index(xe, ye)] + value % p_);
}

bool TruncatedSeries::is_zero() const {
    return std::all_of(table_.begin(), table_.end(), [](std::uint32_t c) { return c == 0; });
}

std::optional<int> TruncatedSeries::order() const {
    for (int d = 0; d < precision_; ++d) {
        const std::size_t base = tri(d);
        for (int i = 0; i <= d; ++i) {
            if (table_[base + i] != 0) return d;
        }
    }
    return std::nullopt;
}

TruncatedSeries TruncatedSeries::truncated(int new_precision) const {
    if (new_precision > precision_) {
        throw precision_error("cannot extend precision from " + std::to_string(precision_) +
                              " to " + std::to_string(new_precision));
    }
    TruncatedSeries out(p_, new_precision);
    std::copy(table_.begin(), table_.begin() + tri(new_precision), out.table_.begin());
    return out;
}

int LeadingForm::term_count() const {
    int n = 0;
    for (std::uint32_t c : coeffs) n += (c != 0);
    return n;
}

// --- basic ring operations --------------------------------------------------

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same_modulus(a, b);
    const int n = std::min(a.precision(), b.precision());
    TruncatedSeries out(a.modulus(), n);
    a.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        if (xe + ye < n) out.set_coeff(xe, ye, c);
    });
    b.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        if (xe + ye < n) out.set_coeff(xe, ye, raw_add(out.coeff_raw(xe, ye), c, a.modulus()));
    });
    return out;
}

TruncatedSeries negate(const TruncatedSeries& a) {
    TruncatedSeries out(a.modulus(), a.precision());
    a.for_each_nonzero(
        [&](int xe, int ye, std::uint32_t c) { out.set_coeff(xe, ye, a.modulus() - c); });
    return out;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return add(a, negate(b));
}

TruncatedSeries scalar_mul(const FpElement& c, const TruncatedSeries& a) {
    if (c.modulus != a.modulus()) throw modulus_mismatch_error("scalar_mul modulus mismatch");
    TruncatedSeries out(a.modulus(), a.precision());
    a.for_each_nonzero([&](int xe, int ye, std::uint32_t v) {
        out.set_coeff(xe, ye, raw_mul(c.residue, v, a.modulus()));
    });
    return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_same_modulus(a, b);
    const std::uint32_t p = a.modulus();
    // Unknown contributions to a*b have degree >= min(Na + ord b, Nb + ord a).
    const long long bound = std::min<long long>(
        static_cast<long long>(a.precision()) + known_order(b),
        static_cast<long long>(b.precision()) + known_order(a));
    const int n = static_cast<int>(std::min<long long>(bound, kMaxPrecision));
    TruncatedSeries out(p, n);

    const auto ta = nonzero_terms(a);
    const auto tb = nonzero_terms(b);
    if (ta.empty() || tb.empty()) return out;

    if (p < 65536) {
        // (p-1)^2 < 2^32, so a uint64 accumulator cannot overflow over any
        // table of this size; reduce once at the end.
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(n) * (n + 1) / 2, 0);
        for (const Term& u : ta) {
            for (const Term& v : tb) {
                const int d = u.xe + u.ye + v.xe + v.ye;
                if (d >= n) continue;
                acc[static_cast<std::size_t>(d) * (d + 1) / 2 + u.xe + v.xe] +=
                    static_cast<std::uint64_t>(u.c) * v.c;
            }
        }
        for (int d = 0; d < n; ++d) {
            for (int i = 0; i <= d; ++i) {
                const std::size_t k = static_cast<std::size_t>(d) * (d + 1) / 2 + i;
                if (acc[k] != 0) out.set_coeff(i, d - i, acc[k] % p);
            }
        }
    } else {
        for (const Term& u : ta) {
            for (const Term& v : tb) {
                if (u.xe + u.ye + v.xe + v.ye >= n) continue;
                out.add_to_coeff(u.xe + v.xe, u.ye + v.ye, raw_mul(u.c, v.c, p));
            }
        }
    }
    return out;
}

TruncatedSeries series_pow(const TruncatedSeries& a, unsigned n) {
    TruncatedSeries acc = TruncatedSeries::constant(a.modulus(), a.precision(), 1);
    TruncatedSeries base = a;
    while (n > 0) {
        if (n & 1u) acc = series_mul(acc, base);
        n >>= 1u;
        if (n > 0) base = series_mul(base, base);
    }
    return acc;
}

TruncatedSeries frobenius_power(const TruncatedSeries& a) {
    const int p = static_cast<int>(a.modulus());
    const long long n = std::min<long long>(static_cast<long long>(p) * a.precision(),
                                            kMaxPrecision);
    TruncatedSeries out(a.modulus(), static_cast<int>(n));
    // c^p == c on F_p, so only the exponents move.
    a.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        if (static_cast<long long>(xe) * p + static_cast<long long>(ye) * p < n)
            out.set_coeff(xe * p, ye * p, c);
    });
    return out;
}

TruncatedSeries series_invert_unit(const TruncatedSeries& a) {
    const std::uint32_t p = a.modulus();
    const int n = a.precision();
    const std::uint32_t a0 = a.coeff_raw(0, 0);
    if (a0 == 0) {
        throw non_unit_error("cannot invert a series with zero constant term");
    }
    const std::uint32_t a0inv = raw_inv(a0, p);

    // Degree-by-degree back substitution: a0 * g_d = -sum_{k=1..d} a_k g_{d-k}
    // on homogeneous slices.
    TruncatedSeries g(p, n);
    g.set_coeff(0, 0, a0inv);
    const auto ta = nonzero_terms(a);
    for (int d = 1; d < n; ++d) {
        std::vector<std::uint64_t> acc(static_cast<std::size_t>(d) + 1, 0);
        for (const Term& u : ta) {
            const int k = u.xe + u.ye;
            if (k < 1 || k > d) continue;
            const int dg = d - k;
            for (int i = 0; i <= dg; ++i) {
                const std::uint32_t gc = g.coeff_raw(i, dg - i);
                if (gc != 0) acc[static_cast<std::size_t>(u.xe + i)] +=
                    static_cast<std::uint64_t>(u.c) * gc;
            }
        }
        for (int i = 0; i <= d; ++i) {
            const std::uint32_t s = static_cast<std::uint32_t>(acc[static_cast<std::size_t>(i)] % p);
            if (s != 0) g.set_coeff(i, d - i, raw_mul(p - s, a0inv, p));
        }
    }
    return g;
}

LeadingForm ord_and_leading_form(const TruncatedSeries& a) {
    auto o = a.order();
    if (!o) {
        throw zero_series_error("zero series below precision " + std::to_string(a.precision()) +
                                ": order not determined");
    }
    LeadingForm lf;
    lf.order = *o;
    lf.modulus = a.modulus();
    lf.coeffs.resize(static_cast<std::size_t>(*o) + 1, 0);
    for (int i = 0; i <= *o; ++i) lf.coeffs[static_cast<std::size_t>(i)] = a.coeff_raw(i, *o - i);
    return lf;
}

TruncatedSeries monomial_divide_exact(const TruncatedSeries& f, int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative exponent in monomial division");
    const int n = f.precision() - a - b;
    if (n < 1) {
        throw precision_error("precision exhausted: dividing precision " +
                              std::to_string(f.precision()) + " by x^" + std::to_string(a) +
                              " y^" + std::to_string(b));
    }
    TruncatedSeries out(f.modulus(), n);
    bool bad = false;
    int bad_xe = 0, bad_ye = 0;
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        if (xe < a || ye < b) {
            if (!bad) {
                bad = true;
                bad_xe = xe;
                bad_ye = ye;
            }
            return;
        }
        if (xe - a + ye - b < n) out.set_coeff(xe - a, ye - b, c);
    });
    if (bad) {
        throw inexact_division_error("monomial x^" + std::to_string(bad_xe) + " y^" +
                                     std::to_string(bad_ye) + " is not divisible by x^" +
                                     std::to_string(a) + " y^" + std::to_string(b));
    }
    return out;
}

// --- substitution -----------------------------------------------------------

Substitution identity_substitution(std::uint32_t p, int precision) {
    return {TruncatedSeries::monomial(p, precision, 1, 0),
            TruncatedSeries::monomial(p, precision, 0, 1)};
}

namespace {

bool single_term(const TruncatedSeries& f, Term& t) {
    int count = 0;
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        ++count;
        t = {xe, ye, c};
    });
    return count == 1;
}

}  // namespace

TruncatedSeries substitute(const TruncatedSeries& f, const Substitution& s) {
    check_same_modulus(f, s.x_image);
    check_same_modulus(f, s.y_image);
    const std::uint32_t p = f.modulus();
    if (!s.x_image.is_zero() && s.x_image.coeff_raw(0, 0) != 0) {
        throw substitution_error("x image has nonzero constant term");
    }
    if (!s.y_image.is_zero() && s.y_image.coeff_raw(0, 0) != 0) {
        throw substitution_error("y image has nonzero constant term");
    }

    const auto terms = nonzero_terms(f);
    bool uses_x = false, uses_y = false;
    int max_xe = 0, max_ye = 0;
    for (const Term& t : terms) {
        uses_x |= t.xe > 0;
        uses_y |= t.ye > 0;
        max_xe = std::max(max_xe, t.xe);
        max_ye = std::max(max_ye, t.ye);
    }
    int n = f.precision();
    if (uses_x) n = std::min(n, s.x_image.precision());
    if (uses_y) n = std::min(n, s.y_image.precision());

    Term tx{}, ty{};
    if (single_term(s.x_image, tx) && single_term(s.y_image, ty)) {
        // Monomial images: a pure exponent remap.
        TruncatedSeries out(p, n);
        for (const Term& t : terms) {
            const long long xe = static_cast<long long>(t.xe) * tx.xe +
                                 static_cast<long long>(t.ye) * ty.xe;
            const long long ye = static_cast<long long>(t.xe) * tx.ye +
                                 static_cast<long long>(t.ye) * ty.ye;
            if (xe + ye >= n) continue;
            const std::uint32_t c = raw_mul(
                t.c, raw_mul(raw_pow(tx.c, static_cast<std::uint64_t>(t.xe), p),
                             raw_pow(ty.c, static_cast<std::uint64_t>(t.ye), p), p), p);
            out.add_to_coeff(static_cast<int>(xe), static_cast<int>(ye), c);
        }
        return out;
    }

    // Cache y-image powers, fold each x-slice, then Horner over the x image.
    std::vector<TruncatedSeries> ypow;
    ypow.reserve(static_cast<std::size_t>(max_ye) + 1);
    ypow.push_back(TruncatedSeries::constant(p, n, 1));
    for (int j = 1; j <= max_ye; ++j) ypow.push_back(series_mul(ypow.back(), s.y_image));

    std::vector<TruncatedSeries> slice(static_cast<std::size_t>(max_xe) + 1,
                                       TruncatedSeries::zero(p, n));
    std::vector<bool> present(static_cast<std::size_t>(max_xe) + 1, false);
    for (const Term& t : terms) {
        auto& sl = slice[static_cast<std::size_t>(t.xe)];
        sl = add(sl, scalar_mul(FpElement(t.c, p), ypow[static_cast<std::size_t>(t.ye)]));
        present[static_cast<std::size_t>(t.xe)] = true;
    }

    TruncatedSeries acc = TruncatedSeries::zero(p, n);
    for (int i = max_xe; i >= 0; --i) {
        if (!acc.is_zero()) {
            acc = series_mul(acc, s.x_image);
            if (acc.precision() > n) acc = acc.truncated(n);
        }
        if (present[static_cast<std::size_t>(i)]) {
            acc = add(acc, slice[static_cast<std::size_t>(i)]);
        }
    }
    return acc.precision() > n ? acc.truncated(n) : acc;
}

// --- transpose and axis helpers ---------------------------------------------

TruncatedSeries transpose_vars(const TruncatedSeries& f) {
    TruncatedSeries out(f.modulus(), f.precision());
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) { out.set_coeff(ye, xe, c); });
    return out;
}

TruncatedSeries restrict_to_axis(const TruncatedSeries& f, Axis axis) {
    TruncatedSeries out(f.modulus(), f.precision());
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        if ((axis == Axis::x && ye == 0) || (axis == Axis::y && xe == 0)) out.set_coeff(xe, ye, c);
    });
    return out;
}

TruncatedSeries axis_shift_down(const TruncatedSeries& f, Axis axis, int k) {
    return axis == Axis::x ? monomial_divide_exact(f, k, 0) : monomial_divide_exact(f, 0, k);
}

bool equal_below(const TruncatedSeries& a, const TruncatedSeries& b, int bound) {
    check_same_modulus(a, b);
    const int n = std::min({bound, a.precision(), b.precision()});
    for (int d = 0; d < n; ++d) {
        for (int i = 0; i <= d; ++i) {
            if (a.coeff_raw(i, d - i) != b.coeff_raw(i, d - i)) return false;
        }
    }
    return true;
}

bool identical(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_ && a.table_ == b.table_;
}

std::string to_string(const TruncatedSeries& f) {
    std::ostringstream os;
    bool first = true;
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        if (!first) os << " + ";
        first = false;
        os << c;
        if (xe > 0) os << "*x^" << xe;
        if (ye > 0) os << "*y^" << ye;
    });
    if (first) os << "0";
    os << " [p=" << f.modulus() << ", N=" << f.precision() << "]";
    return os.str();
}

// --- Weierstrass preparation -------------------------------------------------

namespace {

// Univariate helpers on plain coefficient vectors (index = exponent).
using Coeffs = std::vector<std::uint32_t>;

Coeffs vec_mul_mod(const Coeffs& a, const Coeffs& b, std::size_t len, std::uint32_t p) {
    Coeffs out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (b[j] == 0) continue;
            out[i + j] = raw_add(out[i + j], raw_mul(a[i], b[j], p), p);
        }
    }
    return out;
}

Coeffs vec_invert(const Coeffs& a, std::size_t len, std::uint32_t p) {
    Coeffs out(len, 0);
    const std::uint32_t a0inv = raw_inv(a[0], p);
    out[0] = a0inv;
    for (std::size_t d = 1; d < len; ++d) {
        std::uint64_t s = 0;
        for (std::size_t k = 1; k <= d && k < a.size(); ++k) {
            s += static_cast<std::uint64_t>(a[k]) * out[d - k];
        }
        const std::uint32_t r = static_cast<std::uint32_t>(s % p);
        if (r != 0) out[d] = raw_mul(p - r, a0inv, p);
    }
    return out;
}

// Graded Weierstrass solve, distinguished in x.  Writes the unit slices
// E[k] and the sub-monic poly slices P[k] (x-degree < d), where k is the
// y-level.  Coefficients of f beyond its precision are treated as zero;
// the caller labels the output so no such value is ever claimed.
struct GradedPrep {
    int d = 0;
    std::vector<Coeffs> E;  // E[k][j]: unit, y-level k, x-exponent j
    std::vector<Coeffs> P;  // P[k][j]: poly lower part, j < d (P[0] is zero)
};

GradedPrep graded_prepare_x(const TruncatedSeries& f, int d) {
    const std::uint32_t p = f.modulus();
    const int n = f.precision();
    const std::size_t width = static_cast<std::size_t>(n);

    auto fk = [&](int k) {
        Coeffs row(width, 0);
        for (int j = 0; j + k < n; ++j) row[static_cast<std::size_t>(j)] = f.coeff_raw(j, k);
        return row;
    };

    GradedPrep g;
    g.d = d;
    g.E.assign(static_cast<std::size_t>(n), Coeffs());
    g.P.assign(static_cast<std::size_t>(n), Coeffs(static_cast<std::size_t>(d), 0));

    // Level 0: f(x,0) = E0 * x^d exactly.
    Coeffs f0 = fk(0);
    Coeffs e0(width, 0);
    for (std::size_t j = 0; j + d < width; ++j) e0[j] = f0[j + d];
    g.E[0] = e0;
    const Coeffs e0inv = vec_invert(e0, width, p);

    for (int k = 1; k < n; ++k) {
        // R_k = f^(k) - sum_{0<i<k} E^(i) * P^(k-i)
        Coeffs r = fk(k);
        for (int i = 1; i < k; ++i) {
            const Coeffs& pi = g.P[static_cast<std::size_t>(k - i)];
            bool pz = std::all_of(pi.begin(), pi.end(), [](std::uint32_t c) { return c == 0; });
            if (pz) continue;
            Coeffs prod = vec_mul_mod(g.E[static_cast<std::size_t>(i)], pi, width, p);
            for (std::size_t j = 0; j < width; ++j) r[j] = raw_sub(r[j], prod[j], p);
        }
        // Split: E0 * P_k matches R_k below x^d, E_k carries the rest.
        Coeffs pk(static_cast<std::size_t>(d), 0);
        Coeffs low = vec_mul_mod(e0inv, r, static_cast<std::size_t>(d), p);
        for (int j = 0; j < d; ++j) pk[static_cast<std::size_t>(j)] = low[static_cast<std::size_t>(j)];
        Coeffs e0pk = vec_mul_mod(e0, pk, width, p);
        Coeffs ek(width, 0);
        for (std::size_t j = 0; j + d < width; ++j) ek[j] = raw_sub(r[j + d], e0pk[j + d], p);
        g.P[static_cast<std::size_t>(k)] = pk;
        g.E[static_cast<std::size_t>(k)] = ek;
    }
    return g;
}

}  // namespace

WeierstrassFactors weierstrass_prepare(const TruncatedSeries& f, Axis axis) {
    const TruncatedSeries g = axis == Axis::x ? f : transpose_vars(f);
    const std::uint32_t p = g.modulus();
    const int n = g.precision();

    auto d_opt = restrict_to_axis(g, Axis::x).order();
    if (!d_opt) {
        throw zero_series_error(
            "series vanishes identically on the distinguished axis at precision " +
            std::to_string(n));
    }
    const int d = *d_opt;

    WeierstrassFactors out;
    out.degree = d;
    out.axis = axis;
    if (d == 0) {
        out.unit = f;
        out.poly = TruncatedSeries::constant(p, n, 1);
        return out;
    }

    // Guaranteed zones: the level-k solve consumes f-data at x-degree up to
    // d-1+k (for P) and through unit slices at x-degree < d (for deep
    // levels).  Degree 1 loses nothing; for d >= 2 the safe window is
    // N - 2d + 2 / N - 2d + 1.
    const int poly_prec = d == 1 ? n : std::max(1, n - 2 * d + 2);
    const int unit_prec = d == 1 ? std::max(1, n - 1) : std::max(1, n - 2 * d + 1);

    GradedPrep gp = graded_prepare_x(g, d);

    TruncatedSeries poly(p, poly_prec);
    if (d < poly_prec) poly.set_coeff(d, 0, 1);
    for (int k = 1; k < n && k < poly_prec; ++k) {
        for (int j = 0; j < d && j + k < poly_prec; ++j) {
            const std::uint32_t c = gp.P[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (c != 0) poly.set_coeff(j, k, c);
        }
    }
    TruncatedSeries unit(p, unit_prec);
    for (int k = 0; k < n && k < unit_prec; ++k) {
        if (gp.E[static_cast<std::size_t>(k)].empty()) continue;
        for (int j = 0; j + k < unit_prec && j < n; ++j) {
            const std::uint32_t c = gp.E[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (c != 0) unit.set_coeff(j, k, c);
        }
    }

    if (axis == Axis::y) {
        poly = transpose_vars(poly);
        unit = transpose_vars(unit);
    }
    out.poly = poly;
    out.unit = unit;
    return out;
}

TruncatedSeries solve_coordinate(const TruncatedSeries& w, Axis solve_for) {
    const LeadingForm lf = ord_and_leading_form(w);
    const std::uint32_t want = solve_for == Axis::x ? lf.coeffs[1] : lf.coeffs[0];
    if (lf.order != 1 || want == 0) {
        throw normal_form_error("leading form not solvable for the requested variable (order " +
                                std::to_string(lf.order) + ")");
    }
    WeierstrassFactors wf = weierstrass_prepare(w, solve_for == Axis::x ? Axis::x : Axis::y);
    if (wf.degree != 1) {
        throw normal_form_error("expected distinguished degree 1, got " +
                                std::to_string(wf.degree));
    }
    // poly = var + b0(other): the root is -b0.
    const TruncatedSeries b0 = restrict_to_axis(wf.poly, solve_for == Axis::x ? Axis::y : Axis::x);
    TruncatedSeries root = negate(b0);
    if (root.coeff_raw(0, 0) != 0) {
        throw normal_form_error("coordinate solution has nonzero constant term");
    }
    return root;
}

bool divides_prepared(const TruncatedSeries& w, const TruncatedSeries& f) {
    check_same_modulus(w, f);
    const LeadingForm lf = ord_and_leading_form(w);
    if (lf.order != 1) {
        throw normal_form_error("divides_prepared needs a regular element of order 1, got order " +
                                std::to_string(lf.order));
    }
    const std::uint32_t p = w.modulus();
    const int n = std::min(f.precision(), w.precision());
    const TruncatedSeries fc = f.precision() > n ? f.truncated(n) : f;
    if (lf.coeffs[1] != 0) {
        TruncatedSeries root = solve_coordinate(w, Axis::x);
        if (root.precision() > n) root = root.truncated(n);
        return substitute(fc, {root, TruncatedSeries::monomial(p, n, 0, 1)}).is_zero();
    }
    TruncatedSeries root = solve_coordinate(w, Axis::y);
    if (root.precision() > n) root = root.truncated(n);
    return substitute(fc, {TruncatedSeries::monomial(p, n, 1, 0), root}).is_zero();
}

// --- structure helpers ------------------------------------------------------

MonomialFactor extract_monomial_factor(const TruncatedSeries& f) {
    if (f.is_zero()) {
        throw zero_series_error("cannot extract a monomial factor from the zero series");
    }
    int min_xe = f.precision(), min_ye = f.precision();
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t) {
        min_xe = std::min(min_xe, xe);
        min_ye = std::min(min_ye, ye);
    });
    return {min_xe, min_ye, monomial_divide_exact(f, min_xe, min_ye)};
}

namespace {

// Synthetic division by the distinguished linear factor (x - g(y)),
// ord(g) >= 1: f = q*(x - g) + r(y).  Degrees never drop during the
// reduction, so q is determined below N-1 and r below N.
struct LinearDivision {
    TruncatedSeries quotient;
    TruncatedSeries remainder;
};

LinearDivision divide_by_linear_x(const TruncatedSeries& f, const TruncatedSeries& g) {
    const std::uint32_t p = f.modulus();
    const int n = f.precision();
    const auto gt = nonzero_terms(g);

    // Work table indexed like the series, seeded with f.
    std::vector<std::vector<std::uint32_t>> w(static_cast<std::size_t>(n));
    for (int xe = 0; xe < n; ++xe) w[static_cast<std::size_t>(xe)].assign(
        static_cast<std::size_t>(n - xe), 0);
    f.for_each_nonzero([&](int xe, int ye, std::uint32_t c) {
        w[static_cast<std::size_t>(xe)][static_cast<std::size_t>(ye)] = c;
    });

    TruncatedSeries quot(p, std::max(1, n - 1));
    for (int m = n - 1; m >= 1; --m) {
        for (int k = 0; m + k < n; ++k) {
            const std::uint32_t c = w[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
            if (c == 0) continue;
            w[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = 0;
            if (m - 1 + k < quot.precision()) quot.add_to_coeff(m - 1, k, c);
            // x^m y^k == x^{m-1} y^k (x - g) + x^{m-1} y^k g
            for (const Term& t : gt) {
                const int ye = k + t.ye;
                if (m - 1 + ye < n) {
                    auto& cell = w[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(ye)];
                    cell = raw_add(cell, raw_mul(c, t.c, p), p);
                }
            }
        }
    }
    TruncatedSeries rem(p, n);
    for (int k = 0; k < n; ++k) {
        const std::uint32_t c = w[0][static_cast<std::size_t>(k)];
        if (c != 0) rem.set_coeff(0, k, c);
    }
    return {quot, rem};
}

}  // namespace

std::optional<TruncatedSeries> try_exact_divide(const TruncatedSeries& f,
                                                const TruncatedSeries& w) {
    check_same_modulus(f, w);
    if (w.constant_term() != 0) {
        return series_mul(f, series_invert_unit(w));
    }
    const LeadingForm lf = ord_and_leading_form(w);
    if (lf.order != 1) {
        throw normal_form_error(
            "try_exact_divide needs a unit or an order-1 regular divisor, got order " +
            std::to_string(lf.order));
    }
    const bool via_x = lf.coeffs[1] != 0;
    const TruncatedSeries fo = via_x ? f : transpose_vars(f);
    const TruncatedSeries wo = via_x ? w : transpose_vars(w);

    WeierstrassFactors wf = weierstrass_prepare(wo, Axis::x);
    const TruncatedSeries root = negate(restrict_to_axis(wf.poly, Axis::y));
    if (root.coeff_raw(0, 0) != 0) {
        throw normal_form_error("division root has nonzero constant term");
    }

    LinearDivision div = divide_by_linear_x(fo, root);
    if (!div.remainder.is_zero()) return std::nullopt;
    TruncatedSeries q = series_mul(div.quotient, series_invert_unit(wf.unit));
    return via_x ? q : transpose_vars(q);
}

}  // namespace qladder
