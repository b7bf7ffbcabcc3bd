#include <doctest.h>

#include <random>

#include "nacf/exact.hpp"
#include "nacf/mobius.hpp"
#include "oracle.hpp"

using nacf::BigInt;
using nacf::BigRational;
using nacf::ErrorKind;
using nacf::ExactNumber;

namespace {

ExactNumber q(long p, long r) { return ExactNumber::rational(p, r); }
ExactNumber s(long a, long b, long c, long d) { return ExactNumber::surd(a, b, c, d); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const nacf::Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Parse;
}

ExactNumber random_number(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> small(-40, 40), pos(1, 30);
    static const long radicands[] = {2, 3, 5, 13};
    if (rng() % 3 == 0) return q(small(rng), pos(rng));
    long b = small(rng);
    if (b == 0) b = 1;
    return s(small(rng), b, pos(rng), radicands[rng() % 4]);
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("surd arithmetic examples") {
    CHECK(ExactNumber::sqrt(2) - 1 == s(-1, 1, 1, 2));
    CHECK(ExactNumber(2) / ExactNumber::sqrt(2) == ExactNumber::sqrt(2));
    CHECK(s(-3, 1, 2, 29) + s(3, 1, 2, 29) == ExactNumber::sqrt(29));
    CHECK((ExactNumber::sqrt(2) - 1).to_string() == "(-1+1*sqrt(2))/1");
}

TEST_CASE("canonical forms") {
    CHECK(s(0, 1, 1, 8) == s(0, 2, 1, 2));
    CHECK(s(2, 4, 2, 3) == s(1, 2, 1, 3));
    CHECK(s(1, 1, -1, 2) == s(-1, -1, 1, 2));
    CHECK(s(1, 3, 2, 9) == ExactNumber(5));
    CHECK(s(1, 1, 1, 0) == ExactNumber(1));
    CHECK(ExactNumber::sqrt(49) == ExactNumber(7));
    CHECK((s(1, 1, 1, 2) - s(0, 1, 1, 2)).is_rational());
}

TEST_CASE("field errors") {
    CHECK(kind_of([] { (void)(ExactNumber(1) / ExactNumber(0)); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { (void)(ExactNumber::sqrt(2) + ExactNumber::sqrt(3)); }) == ErrorKind::MixedRadicands);
    CHECK(kind_of([] { (void)ExactNumber::sqrt(-1); }) == ErrorKind::NegativeInput);
    CHECK(kind_of([] { (void)nacf::integer_sqrt(-4); }) == ErrorKind::NegativeInput);
}

TEST_CASE("floor examples") {
    CHECK(nacf::floor_exact(q(99, 40) - q(73, 100)) == 1);
    CHECK(nacf::floor_exact(s(-3, 1, 2, 29)) == 1);
    CHECK(nacf::floor_exact(ExactNumber(7)) == 7);
    CHECK(nacf::floor_exact(q(-1, 2)) == -1);
    CHECK(nacf::floor_exact(-ExactNumber::sqrt(2)) == -2);
    CHECK(nacf::ceil_exact(ExactNumber::sqrt(2)) == 2);
    CHECK(nacf::ceil_exact(ExactNumber(3)) == 3);
}

TEST_CASE("floor of differences across fields") {
    CHECK(nacf::floor_difference(ExactNumber::sqrt(5), ExactNumber::sqrt(2)) == 0);
    CHECK(nacf::floor_difference(ExactNumber::sqrt(13) * 3, ExactNumber::sqrt(2)) == 9);
    CHECK(nacf::floor_difference(q(7, 2), ExactNumber::sqrt(2)) == 2);
}

TEST_CASE("compare examples") {
    using std::strong_ordering;
    CHECK(nacf::compare_exact(q(2, 9), s(-17, 1, 10, 369)) == strong_ordering::greater);
    CHECK(nacf::compare_exact(ExactNumber::sqrt(2), q(141, 100)) == strong_ordering::greater);
    CHECK(nacf::compare_exact(ExactNumber::sqrt(2), ExactNumber::sqrt(2)) == strong_ordering::equal);
    CHECK(nacf::compare_exact(ExactNumber::sqrt(2), ExactNumber::sqrt(3)) == strong_ordering::less);
    CHECK(nacf::compare_exact(s(1, 1, 1, 2), s(0, 2, 3, 5) + 1) == strong_ordering::less);
}

TEST_CASE("integer square root examples") {
    CHECK(nacf::integer_sqrt(0) == 0);
    CHECK(nacf::integer_sqrt(29) == 5);
    CHECK(nacf::integer_sqrt(369) == 19);
    BigInt big = BigInt("123456789012345678901234567890");
    BigInt r = nacf::integer_sqrt(big * big + 5);
    CHECK(r == big);
}

TEST_CASE("mobius fixed points") {
    for (long n = 2; n <= 9; ++n) {
        const auto m = nacf::MobiusMatrix::digit(n, n - 2);
        const ExactNumber xi = s(-(n - 2), 1, 2, n * n + 4);
        CHECK(nacf::solve_mobius_fixed_point(m, 0, ExactNumber(1), ExactNumber(2)) == xi);
    }
    // N/x - d = x
    for (long d = 1; d <= 5; ++d) {
        const auto m = nacf::MobiusMatrix::digit(7, d);
        CHECK(nacf::solve_mobius_fixed_point(m, 0, ExactNumber(0), ExactNumber(100)) ==
              s(-d, 1, 2, d * d + 28));
    }
    // x + 1 = RM(x) for RM = R B_8 B_1 B_1 (N = 2)
    const nacf::MobiusMatrix rm(12, 32, 10, 26);
    CHECK(nacf::solve_mobius_fixed_point(rm, 1, q(1, 10), q(3, 10)) == s(-6, 1, 5, 51));
}

TEST_CASE("quadratic root solving") {
    CHECK(nacf::solve_quadratic_in_range(1, 0, -2, ExactNumber(0), ExactNumber(2)) == ExactNumber::sqrt(2));
    CHECK(nacf::solve_quadratic_in_range(0, 2, -1, ExactNumber(0), ExactNumber(1)) == q(1, 2));
    CHECK(kind_of([] { (void)nacf::solve_quadratic_in_range(0, 0, 1, ExactNumber(0), ExactNumber(1)); }) ==
          ErrorKind::DegenerateEquation);
    CHECK(kind_of([] { (void)nacf::solve_quadratic_in_range(1, 0, -2, ExactNumber(2), ExactNumber(3)); }) ==
          ErrorKind::NoRootInRange);
    CHECK(kind_of([] { (void)nacf::solve_quadratic_in_range(1, 0, -2, ExactNumber(-2), ExactNumber(2)); }) ==
          ErrorKind::AmbiguousRoot);
    const auto roots = nacf::quadratic_roots(1, 0, -2);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -ExactNumber::sqrt(2));
    CHECK(roots[1] == ExactNumber::sqrt(2));
    CHECK(nacf::quadratic_roots(1, 0, 1).empty());
}

TEST_CASE("parsing") {
    CHECK(nacf::parse_exact("40/33") == q(40, 33));
    CHECK(nacf::parse_exact("-7") == ExactNumber(-7));
    CHECK(nacf::parse_exact("(0+1*sqrt(2))/1") == ExactNumber::sqrt(2));
    CHECK(nacf::parse_exact("(-17+1*sqrt(369))/10") == s(-17, 1, 10, 369));
    CHECK(nacf::parse_exact("(1-1*sqrt(5))/2") == s(1, -1, 2, 5));
    CHECK(nacf::parse_exact("sqrt(3)") == ExactNumber::sqrt(3));
    for (const char* bad : {"1.5", "", "abc", "1/0", "(1+sqrt(2)", "2/x"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(nacf::parse_exact(bad), nacf::Error);
    }
}

TEST_CASE("decimal rendering") {
    CHECK((ExactNumber::sqrt(5) - 1).to_decimal(6) == "1.236068");
    CHECK(ExactNumber(1).to_decimal(6) == "1.000000");
    CHECK(q(-1, 3).to_decimal(3) == "-0.333");
    CHECK((ExactNumber::sqrt(2) - 1).to_decimal(6) == "0.414214");
}

TEST_CASE("rational points between surds") {
    const ExactNumber lo = s(-17, 1, 10, 369), hi = s(-2, 1, 2, 6);
    const ExactNumber mid(nacf::rational_midpoint(lo, hi));
    CHECK(lo < mid);
    CHECK(mid < hi);
    const ExactNumber b(nacf::rational_between(ExactNumber::sqrt(2), ExactNumber::sqrt(2) + q(1, 1000000000)));
    CHECK(ExactNumber::sqrt(2) < b);
}

TEST_CASE("property: field laws and ordering against MPFR") {
    std::mt19937_64 rng(20261016);
    for (int i = 0; i < 10000; ++i) {
        const ExactNumber x = random_number(rng);
        ExactNumber y = random_number(rng);
        if (!x.is_rational() && !y.is_rational() && x.radicand() != y.radicand()) {
            // Ordering works across fields, arithmetic does not.
            const int want = oracle::real(x).cmp(oracle::real(y));
            const auto got = nacf::compare_exact(x, y);
            CHECK((want < 0 ? got < 0 : want > 0 ? got > 0 : got == 0));
            continue;
        }
        CAPTURE(x.to_string());
        CAPTURE(y.to_string());
        const oracle::Real rx = oracle::real(x), ry = oracle::real(y);

        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) - y == x);
        CHECK(oracle::real(x + y).near(rx + ry, 1900));
        CHECK(oracle::real(x * y).near(rx * ry, 1900));
        if (y.sign() != 0) {
            CHECK((x / y) * y == x);
            CHECK(oracle::real(x / y).near(rx / ry, 1800));
        }

        const int want = rx.cmp(ry);
        const auto got = nacf::compare_exact(x, y);
        CHECK((want < 0 ? got < 0 : want > 0 ? got > 0 : got == 0));

        const BigInt f = nacf::floor_exact(x);
        CHECK(ExactNumber(f) <= x);
        CHECK(x < ExactNumber(f + 1));
        CHECK(f == rx.floor_si());

        CHECK(nacf::parse_exact(x.to_string()) == x);
        if (const auto* sx = x.if_surd()) {
            // Re-normalizing a canonical surd is a no-op; scaling all parts is too.
            CHECK(ExactNumber::surd(sx->a(), sx->b(), sx->c(), sx->radicand()) == x);
            CHECK(ExactNumber::surd(3 * sx->a(), 3 * sx->b(), 3 * sx->c(), sx->radicand()) == x);
            CHECK(ExactNumber::surd(sx->a(), sx->b(), sx->c(), 4 * sx->radicand()) ==
                  ExactNumber::from_field(x.rational_part(), x.sqrt_coefficient() * 2, sx->radicand()));
        }
    }
}

TEST_CASE("property: associativity and distributivity on triples sharing a radicand") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> small(-30, 30), pos(1, 20);
    static const long radicands[] = {2, 3, 5, 13, 29};
    for (int i = 0; i < 2000; ++i) {
        const long d = radicands[i % 5];
        auto pick = [&] { return s(small(rng), small(rng) | 1, pos(rng), d); };
        const ExactNumber x = pick(), y = pick(), z = pick();
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("property: fixed points satisfy their equation") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> entry(-9, 9);
    int solved = 0;
    for (int i = 0; i < 3000; ++i) {
        const nacf::MobiusMatrix m(entry(rng), entry(rng), entry(rng), entry(rng));
        const int shift = static_cast<int>(rng() % 2);
        try {
            const ExactNumber y = nacf::solve_mobius_fixed_point(m, shift, ExactNumber(0), ExactNumber(3));
            CHECK((y + shift) * (ExactNumber(m.c()) * y + ExactNumber(m.d())) ==
                  ExactNumber(m.a()) * y + ExactNumber(m.b()));
            ++solved;
        } catch (const nacf::Error&) {
        }
    }
    CHECK(solved > 100);
}

}  // TEST_SUITE
