#include "nacf/mobius.hpp"

namespace nacf {

MobiusMatrix MobiusMatrix::digit(std::int64_t n, Digit d) {
    return {0, BigInt(static_cast<long>(n)), 1, BigInt(static_cast<long>(d))};
}

BigInt MobiusMatrix::content() const {
    BigInt g = 0;
    for (const auto& x : e_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

ExactNumber MobiusMatrix::apply(const ExactNumber& x) const {
    const ExactNumber den = ExactNumber(c()) * x + ExactNumber(d());
    if (den.sign() == 0) {
        throw Error(ErrorKind::PoleInput, to_string() + " has a pole at " + x.to_string());
    }
    return (ExactNumber(a()) * x + ExactNumber(b())) / den;
}

MobiusMatrix MobiusMatrix::mod(const BigInt& m) const {
    std::array<BigInt, 4> r;
    for (std::size_t i = 0; i < 4; ++i) {
        mpz_fdiv_r(r[i].get_mpz_t(), e_[i].get_mpz_t(), m.get_mpz_t());
    }
    return {r[0], r[1], r[2], r[3]};
}

MobiusMatrix MobiusMatrix::divided_by(const BigInt& k) const {
    for (const auto& x : e_) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) {
            throw Error(ErrorKind::InvariantViolation,
                        k.get_str() + " does not divide every entry of " + to_string());
        }
    }
    return {e_[0] / k, e_[1] / k, e_[2] / k, e_[3] / k};
}

MobiusMatrix MobiusMatrix::scaled(const BigInt& k) const {
    return {e_[0] * k, e_[1] * k, e_[2] * k, e_[3] * k};
}

MobiusMatrix operator*(const MobiusMatrix& x, const MobiusMatrix& y) {
    return {x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
            x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d()};
}

std::string MobiusMatrix::to_string() const {
    return "[[" + a().get_str() + "," + b().get_str() + "],[" + c().get_str() + "," +
           d().get_str() + "]]";
}

bool projective_equiv(const MobiusMatrix& m1, const MobiusMatrix& m2) {
    const auto& x = m1.entries();
    const auto& y = m2.entries();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (x[i] * y[j] != x[j] * y[i]) return false;
        }
    }
    return true;
}

ExactNumber solve_mobius_fixed_point(const MobiusMatrix& m, int shift, const ExactNumber& lo,
                                     const ExactNumber& hi) {
    const BigInt s(shift);
    return solve_quadratic_in_range(m.c(), m.d() + s * m.c() - m.a(), s * m.d() - m.b(), lo, hi);
}

}  // namespace nacf
