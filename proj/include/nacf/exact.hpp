#pragma once

// Exact arithmetic over Q and real quadratic fields Q(sqrt(D)).
//
// A value is either a BigRational or a QuadraticSurd (a + b*sqrt(D))/c with
// D squarefree and > 1, b != 0, c > 0 and gcd(a, b, c) = 1. The two arms of
// ExactNumber never overlap, so structural equality is value equality.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nacf/error.hpp"

namespace nacf {

using BigInt = mpz_class;

/// Floor of the non-negative square root. Throws NegativeInput for n < 0.
BigInt integer_sqrt(const BigInt& n);

/// Floor division for c > 0.
BigInt floor_div(const BigInt& n, const BigInt& c);

/// Non-negative gcd.
BigInt gcd(const BigInt& x, const BigInt& y);

std::size_t hash_value(const BigInt& n) noexcept;

class BigRational {
public:
    BigRational() = default;
    BigRational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    BigRational(const BigInt& n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    BigRational(const BigInt& num, const BigInt& den);

    BigInt numerator() const { return v_.get_num(); }
    BigInt denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    BigRational operator-() const;
    friend BigRational operator+(const BigRational& x, const BigRational& y);
    friend BigRational operator-(const BigRational& x, const BigRational& y);
    friend BigRational operator*(const BigRational& x, const BigRational& y);
    friend BigRational operator/(const BigRational& x, const BigRational& y);

    friend bool operator==(const BigRational& x, const BigRational& y) { return x.v_ == y.v_; }
    friend std::strong_ordering operator<=>(const BigRational& x, const BigRational& y);

    /// "p/q", or "p" when q = 1.
    std::string to_string() const;

private:
    explicit BigRational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

class ExactNumber;

class QuadraticSurd {
public:
    BigInt a() const { return a_; }
    BigInt b() const { return b_; }
    BigInt c() const { return c_; }
    BigInt radicand() const { return d_; }

    /// Conjugate (a - b*sqrt(D))/c.
    QuadraticSurd conjugate() const;

    friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

    /// "(a+b*sqrt(D))/c", always with every part written out.
    std::string to_string() const;

private:
    friend class ExactNumber;
    QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

    BigInt a_;
    BigInt b_;
    BigInt c_;
    BigInt d_;
};

/// A rational number or a real quadratic irrational, always in canonical form.
class ExactNumber {
public:
    ExactNumber() : v_(BigRational{}) {}
    ExactNumber(long n) : v_(BigRational(n)) {}  // NOLINT(google-explicit-constructor)
    ExactNumber(const BigInt& n) : v_(BigRational(n)) {}  // NOLINT(google-explicit-constructor)
    ExactNumber(BigRational q) : v_(std::move(q)) {}  // NOLINT(google-explicit-constructor)

    static ExactNumber rational(const BigInt& num, const BigInt& den);

    /// (a + b*sqrt(D))/c for arbitrary D >= 0 and c != 0. Square factors of D
    /// are pulled into b; perfect squares collapse to rationals.
    static ExactNumber surd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d);

    /// sqrt(n) for n >= 0.
    static ExactNumber sqrt(const BigInt& n);

    /// r + s*sqrt(d) where d is already squarefree (or s = 0). Skips the
    /// radicand reduction done by surd().
    static ExactNumber from_field(const BigRational& r, const BigRational& s, const BigInt& d);

    /// Rational part r and irrational coefficient s with x = r + s*sqrt(D).
    BigRational rational_part() const;
    BigRational sqrt_coefficient() const;

    bool is_rational() const { return std::holds_alternative<BigRational>(v_); }
    const BigRational& as_rational() const;
    const QuadraticSurd& as_surd() const;
    const BigRational* if_rational() const { return std::get_if<BigRational>(&v_); }
    const QuadraticSurd* if_surd() const { return std::get_if<QuadraticSurd>(&v_); }

    /// Squarefree radicand, or 0 for rationals.
    BigInt radicand() const;

    int sign() const;
    ExactNumber operator-() const;
    ExactNumber reciprocal() const;

    friend ExactNumber operator+(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator-(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator*(const ExactNumber& x, const ExactNumber& y);
    friend ExactNumber operator/(const ExactNumber& x, const ExactNumber& y);

    friend bool operator==(const ExactNumber& x, const ExactNumber& y) { return x.v_ == y.v_; }
    friend std::strong_ordering operator<=>(const ExactNumber& x, const ExactNumber& y);

    std::string to_string() const;

    /// Decimal rendering rounded half-up to `places` fractional digits.
    std::string to_decimal(int places) const;

    /// Display-only approximation.
    double to_double() const;

private:
    explicit ExactNumber(QuadraticSurd s) : v_(std::move(s)) {}
    std::variant<BigRational, QuadraticSurd> v_;
};

/// Greatest integer <= x, evaluated with integer square roots only.
BigInt floor_exact(const ExactNumber& x);

/// floor(u - v), also when u and v live in different quadratic fields.
BigInt floor_difference(const ExactNumber& u, const ExactNumber& v);

/// Least integer >= x.
BigInt ceil_exact(const ExactNumber& x);

/// Exact three-way comparison; also handles two different radicands.
std::strong_ordering compare_exact(const ExactNumber& x, const ExactNumber& y);

/// Parses "p", "p/q", "(a+b*sqrt(D))/c", "(a-b*sqrt(D))/c", "sqrt(D)" and
/// "(a+b*sqrt(D))". Decimal notation is rejected.
ExactNumber parse_exact(std::string_view text);

/// Some rational strictly between lo and hi (lo < hi required).
BigRational rational_between(const ExactNumber& lo, const ExactNumber& hi);

/// Rational approximations lo_q >= lo and hi_q <= hi with lo_q < hi_q, and
/// their average. Requires lo < hi.
BigRational rational_midpoint(const ExactNumber& lo, const ExactNumber& hi);

/// Every real root of c2*x^2 + c1*x + c0 = 0 in increasing order; linear when
/// c2 = 0. Throws DegenerateEquation when c2 = c1 = 0.
std::vector<ExactNumber> quadratic_roots(const BigInt& c2, const BigInt& c1, const BigInt& c0);

/// The unique real root of c2*x^2 + c1*x + c0 = 0 in [lo, hi]. Linear when
/// c2 = 0. Throws DegenerateEquation (c2 = c1 = 0), NoRootInRange, or
/// AmbiguousRoot when both roots fall in the range.
ExactNumber solve_quadratic_in_range(const BigInt& c2, const BigInt& c1, const BigInt& c0,
                                     const ExactNumber& lo, const ExactNumber& hi);

struct ExactNumberHash {
    std::size_t operator()(const ExactNumber& x) const noexcept;
};

}  // namespace nacf
