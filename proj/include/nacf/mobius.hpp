#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nacf/exact.hpp"

namespace nacf {

using Digit = std::int64_t;

/// 2x2 integer matrix acting as x -> (a x + b) / (c x + d).
class MobiusMatrix {
public:
    MobiusMatrix() : MobiusMatrix(1, 0, 0, 1) {}
    MobiusMatrix(BigInt a, BigInt b, BigInt c, BigInt d)
        : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static MobiusMatrix identity() { return {}; }
    /// B_d = [[0, N], [1, d]], the inverse branch x -> N / (d + x).
    static MobiusMatrix digit(std::int64_t n, Digit d);
    /// R = [[1, 1], [0, 1]], the translation x -> x + 1.
    static MobiusMatrix shift() { return {1, 1, 0, 1}; }

    const BigInt& a() const { return e_[0]; }
    const BigInt& b() const { return e_[1]; }
    const BigInt& c() const { return e_[2]; }
    const BigInt& d() const { return e_[3]; }
    const std::array<BigInt, 4>& entries() const { return e_; }

    BigInt det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
    BigInt content() const;

    /// (a x + b) / (c x + d); PoleInput when c x + d = 0.
    ExactNumber apply(const ExactNumber& x) const;

    /// Entries reduced into [0, m).
    MobiusMatrix mod(const BigInt& m) const;

    /// Every entry divided by `k`; `k` must divide all of them.
    MobiusMatrix divided_by(const BigInt& k) const;
    MobiusMatrix scaled(const BigInt& k) const;

    friend MobiusMatrix operator*(const MobiusMatrix& x, const MobiusMatrix& y);
    friend bool operator==(const MobiusMatrix&, const MobiusMatrix&) = default;

    /// "[[a,b],[c,d]]"
    std::string to_string() const;

private:
    std::array<BigInt, 4> e_;
};

/// True iff the matrices are proportional, i.e. define the same Mobius map.
bool projective_equiv(const MobiusMatrix& m1, const MobiusMatrix& m2);

/// Root in [lo, hi] of x + shift = M(x), expanded to
/// c x^2 + (d + shift*c - a) x + (shift*d - b) = 0.
ExactNumber solve_mobius_fixed_point(const MobiusMatrix& m, int shift, const ExactNumber& lo,
                                     const ExactNumber& hi);

}  // namespace nacf
