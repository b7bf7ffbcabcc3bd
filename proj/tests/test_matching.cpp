#include <doctest.h>

#include <random>

#include "nacf/matching.hpp"
#include "oracle.hpp"

using nacf::BigRational;
using nacf::CylinderKind;
using nacf::Digit;
using nacf::ExactNumber;
using nacf::Family;
using nacf::MobiusMatrix;
using nacf::ParamInterval;
using nacf::Params;
using nacf::Stability;

namespace {

ExactNumber q(long p, long r) { return ExactNumber::rational(p, r); }
ExactNumber s(long a, long b, long c, long d) { return ExactNumber::surd(a, b, c, d); }
BigRational br(long p, long r) { return BigRational(p, r); }

mpq_class mpq(const BigRational& x) { return x.raw(); }

// T^k(alpha) and T^l(alpha + 1) straight from the mpq oracle.
mpq_class iterate_q(mpq_class x, long n, const mpq_class& alpha, std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) x = oracle::step_q(x, n, alpha).next;
    return x;
}

bool matches_q(const mpq_class& alpha, long n, std::size_t k, std::size_t l) {
    return iterate_q(alpha, n, alpha, k) == iterate_q(alpha + 1, n, alpha, l);
}

// A rational within about 10^-exp of `edge`, on the requested side.
ExactNumber near_edge(const ExactNumber& edge, int exp, bool above) {
    mpz_class ten = 1;
    for (int i = 0; i < exp; ++i) ten *= 10;
    const ExactNumber eps(BigRational(nacf::BigInt(1), ten));
    return above ? ExactNumber(nacf::rational_between(edge, edge + eps))
                 : ExactNumber(nacf::rational_between(edge - eps, edge));
}

}  // namespace

TEST_SUITE("matching") {

TEST_CASE("detect matching examples") {
    auto m = nacf::detect_matching(br(2, 9), 2, 100);
    REQUIRE(m);
    CHECK(m->k == 1);
    CHECK(m->l == 5);
    CHECK(m->matched_value == ExactNumber(1));
    CHECK(m->index == -4);

    m = nacf::detect_matching(br(1, 8), 2, 100);
    REQUIRE(m);
    CHECK(m->k == 1);
    CHECK(m->l == 4);

    CHECK_FALSE(nacf::detect_matching(br(6, 5), 5, 300));
}

TEST_CASE("stability examples") {
    auto r = nacf::stability_check(br(2, 9), 2, 3, 5);
    CHECK(r.verdict == Stability::Stable);
    CHECK(r.rm == MobiusMatrix(12, 32, 10, 26));
    CHECK(r.m == MobiusMatrix(24, 64, 20, 52));

    CHECK(nacf::stability_check(br(8, 43), 2, 5, 5).verdict == Stability::Stable);
    CHECK_THROWS_AS(nacf::stability_check(br(2, 9), 2, 2, 2), nacf::Error);

    // Every matching pair of 1/8 up to 40 steps is unstable.
    int pairs = 0;
    for (std::size_t k = 1; k <= 40; ++k) {
        for (std::size_t l = 1; l <= 40; ++l) {
            if (!matches_q(mpq_class(1, 8), 2, k, l)) continue;
            ++pairs;
            CHECK(nacf::stability_check(br(1, 8), 2, k, l).verdict == Stability::Unstable);
        }
    }
    CHECK(pairs > 10);
}

TEST_CASE("stability outside N = 2 is not decided") {
    const auto m = nacf::detect_matching(br(1, 4), 3, 200);
    REQUIRE(m);
    CHECK(nacf::stability_check(br(1, 4), 3, m->k, m->l).verdict == Stability::UnknownForThisN);
}

TEST_CASE("cylinder examples") {
    auto c = nacf::cylinder_interval(CylinderKind::Alpha, {8, 1, 1}, 2);
    CHECK(c.lo == s(-17, 1, 10, 369));
    CHECK(c.hi == s(-2, 1, 2, 6));
    CHECK(c.lo_open);
    CHECK(c.hi_open);

    c = nacf::cylinder_interval(CylinderKind::AlphaPlusOne, {1, 2, 1, 2, 2}, 2);
    CHECK(c.lo == s(-17, 1, 10, 369));
    CHECK(c.hi == s(-6, 1, 5, 51));

    // A single digit d: between the roots of alpha (d + 1 + alpha) = 2 and alpha (d + alpha) = 2.
    for (long d = 5; d <= 12; ++d) {
        c = nacf::cylinder_interval(CylinderKind::Alpha, {d}, 2);
        CHECK(c.lo == s(-(d + 1), 1, 2, (d + 1) * (d + 1) + 8));
        CHECK(c.hi == s(-d, 1, 2, d * d + 8));
    }
    // For d = 4 the upper root lies beyond sqrt(2) - 1, which itself has digit 4.
    c = nacf::cylinder_interval(CylinderKind::Alpha, {4}, 2);
    CHECK(c.lo == s(-5, 1, 2, 33));
    CHECK(c.hi == nacf::alpha_max(2));
    CHECK_FALSE(c.hi_open);
    // Digit 3 would need alpha > sqrt(6) - 2 > sqrt(2) - 1.
    CHECK_THROWS_AS(nacf::cylinder_interval(CylinderKind::Alpha, {3}, 2), nacf::Error);
}

TEST_CASE("intervals") {
    const ParamInterval a{q(0, 1), q(1, 2)}, b{q(1, 4), q(3, 4), false, true};
    const auto i = a.intersect(b);
    CHECK(i.lo == q(1, 4));
    CHECK_FALSE(i.lo_open);
    CHECK(i.hi == q(1, 2));
    CHECK(i.contains(q(1, 4)));
    CHECK_FALSE(i.contains(q(1, 2)));
    CHECK_THROWS_AS(a.intersect(ParamInterval{q(1, 2), q(1, 1)}), nacf::Error);
    CHECK(i.to_string() == "[1/4, 1/2)");
}

TEST_CASE("matching interval examples") {
    auto mi = nacf::matching_interval(br(2, 9), 2, 40);
    CHECK(mi.k == 3);
    CHECK(mi.l == 5);
    CHECK(mi.interval.lo == s(-17, 1, 10, 369));
    CHECK(mi.interval.hi == s(-2, 1, 2, 6));
    const auto fi = nacf::family_member(Family::I, 0);
    CHECK(mi.interval.lo == fi.lo);
    CHECK(mi.interval.hi == fi.hi);

    mi = nacf::matching_interval(br(13, 72), 2, 40);
    CHECK(mi.k == 6);
    CHECK(mi.l == 6);
    const auto fiii = nacf::family_member(Family::III, 0);
    CHECK(mi.interval.lo == fiii.lo);
    CHECK(mi.interval.hi == fiii.hi);

    try {
        (void)nacf::matching_interval(br(1, 8), 2, 40);
        FAIL("1/8 has no stable matching");
    } catch (const nacf::Error& e) {
        CHECK(e.kind() == nacf::ErrorKind::BadRational);
    }
    CHECK_THROWS_AS(nacf::matching_interval(br(1, 4), 3, 40), nacf::Error);
}

TEST_CASE("bad rational certificates") {
    auto c = nacf::bad_rational_certificate(3);
    CHECK(c.rm == MobiusMatrix(1, 17, 1, 15));
    CHECK(c.m == MobiusMatrix(16, 56, 14, 50));
    CHECK(c.m_hat == MobiusMatrix(8, 28, 7, 25));
    CHECK(c.valid);
    CHECK_FALSE(c.scan_hit);
    CHECK(c.text().find("valid") != std::string::npos);

    c = nacf::bad_rational_certificate(4);
    CHECK(c.rm == MobiusMatrix(1, 33, 1, 31));
    CHECK(c.valid);

    c = nacf::bad_rational_certificate(5);
    CHECK(c.valid);
    CHECK(c.scan_limit == 30);
    CHECK_FALSE(nacf::equivalence_scan(c.alpha, 2, 30, 30));

    CHECK_THROWS_AS(nacf::bad_rational_certificate(2), nacf::Error);
}

TEST_CASE("bad rationals match but never stably") {
    for (int n = 3; n <= 5; ++n) {
        const BigRational alpha(nacf::BigInt(1), nacf::BigInt(1) << n);
        REQUIRE(nacf::detect_matching(alpha, 2, 60));
        for (std::size_t k = 1; k <= 30; ++k) {
            for (std::size_t l = 1; l <= 30; ++l) {
                if (!matches_q(mpq(alpha), 2, k, l)) continue;
                CHECK(nacf::stability_check(alpha, 2, k, l).verdict == Stability::Unstable);
            }
        }
    }
}

TEST_CASE("obstruction examples") {
    CHECK(nacf::no_matching_obstruction(br(6, 5), 5) == nacf::Obstruction::ObstructionHolds);
    CHECK(nacf::no_matching_obstruction(br(1, 8), 2) == nacf::Obstruction::HypothesesFail);
    // (7, 7/6) is in K, but 7 divides t0 = 7.
    CHECK(nacf::in_coprime_region(Params(7, q(7, 6))));
    CHECK(nacf::no_matching_obstruction(br(7, 6), 7) == nacf::Obstruction::HypothesesFail);
    CHECK(nacf::no_matching_obstruction(br(8, 7), 7) == nacf::Obstruction::ObstructionHolds);
    // 9 divides neither 19 nor 29.
    CHECK(nacf::no_matching_obstruction(br(19, 10), 9) == nacf::Obstruction::ObstructionHolds);
}

TEST_CASE("theorem families") {
    auto r = nacf::verify_theorem_intervals(Family::I, {0, 1, 2, 3, 4, 5});
    CHECK(r.all_pass());
    for (const auto& c : r.checks) {
        const long k = c.k;
        REQUIRE(c.interval);
        CHECK(c.interval->lo == s(-17 - 8 * k, 1, 10 + 4 * k, 369 + 304 * k + 64 * k * k));
    }

    const auto ii = nacf::family_member(Family::II, 0);
    CHECK(ii.alpha == br(8, 43));
    CHECK(ii.stable_k == 5);
    CHECK(ii.stable_l == 5);
    CHECK(ii.rm == MobiusMatrix(128, 280, 108, 236));
    CHECK(nacf::verify_theorem_intervals(Family::II, {0}).all_pass());

    const auto iv = nacf::family_member(Family::IV, 0);
    CHECK(iv.alpha == br(30, 191));
    CHECK(iv.stable_k == 7);
    CHECK(iv.stable_l == 7);
    CHECK(nacf::verify_theorem_intervals(Family::IV, {0}).all_pass());

    CHECK(nacf::parse_family("iii") == Family::III);
    CHECK_THROWS_AS(nacf::parse_family("v"), nacf::Error);
}

TEST_CASE("family iii first digit for larger k") {
    // 2/alpha - alpha for alpha = 13/(72 + 26k) crosses 11 + 4k once 72 + 26k >= 169.
    for (long k = 0; k <= 10; ++k) {
        const auto m = nacf::family_member(Family::III, k);
        const Params p(2, ExactNumber(m.alpha));
        const Digit d1 = nacf::digit(p.alpha(), p);
        CHECK(d1 == (k <= 3 ? 10 + 4 * k : 11 + 4 * k));
        CHECK(oracle::digit_q(mpq(m.alpha), 2, mpq(m.alpha)) == d1);
    }
}

TEST_CASE("parallel verification keeps order and results") {
    const std::vector<std::int64_t> ks{5, 0, 3, 1};
    const auto serial = nacf::verify_theorem_intervals(Family::II, ks, false, 1);
    const auto parallel = nacf::verify_theorem_intervals(Family::II, ks, false, 4);
    REQUIRE(serial.checks.size() == parallel.checks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        CHECK(parallel.checks[i].k == ks[i]);
        CHECK(parallel.checks[i].pass == serial.checks[i].pass);
    }
}

TEST_CASE("property: detected matches are real") {
    std::mt19937_64 rng(47);
    int found = 0;
    for (int i = 0; i < 150; ++i) {
        const long n = 2 + static_cast<long>(rng() % 4);
        const long top = nacf::floor_exact(nacf::alpha_max(n) * 200).get_si();
        const BigRational alpha(1 + static_cast<long>(rng() % top), 200);
        const auto m = nacf::detect_matching(alpha, n, 200);
        if (!m) continue;
        ++found;
        CHECK(matches_q(mpq(alpha), n, m->k, m->l));
        // Nothing smaller by (K + L, K).
        for (std::size_t k = 0; k <= m->k + m->l; ++k) {
            for (std::size_t l = 0; k + l <= m->k + m->l; ++l) {
                if (k + l == m->k + m->l && k >= m->k) continue;
                CHECK_FALSE(matches_q(mpq(alpha), n, k, l));
            }
        }
    }
    CHECK(found > 50);
}

TEST_CASE("property: stable matching persists under small perturbations") {
    for (Family f : {Family::I, Family::II, Family::III, Family::IV}) {
        for (long k = 0; k <= 2; ++k) {
            const auto m = nacf::family_member(f, k);
            const auto mi = nacf::matching_interval(m.alpha, 2, 40);
            for (int exp : {9, 12}) {
                for (bool above : {false, true}) {
                    const ExactNumber a = near_edge(ExactNumber(m.alpha), exp, above);
                    REQUIRE(mi.interval.contains(a));
                    CHECK(matches_q(mpq(a.as_rational()), 2, mi.k, mi.l));
                }
            }
            // Also near each end of the interval, from inside.
            for (int exp : {9, 12}) {
                const ExactNumber a = near_edge(mi.interval.lo, exp, true);
                const ExactNumber b = near_edge(mi.interval.hi, exp, false);
                CHECK(matches_q(mpq(a.as_rational()), 2, mi.k, mi.l));
                CHECK(matches_q(mpq(b.as_rational()), 2, mi.k, mi.l));
            }
        }
    }
}

TEST_CASE("property: cylinder soundness on random prefixes") {
    std::mt19937_64 rng(53);
    const ExactNumber top = nacf::alpha_max(2);
    for (int i = 0; i < 30; ++i) {
        // A prefix taken from a real expansion.
        const BigRational a0(3 + static_cast<long>(rng() % 400), 1000);
        const auto kind = rng() % 2 ? CylinderKind::Alpha : CylinderKind::AlphaPlusOne;
        const std::size_t len = 1 + rng() % 5;
        const mpq_class a0q = mpq(a0);
        const auto ds = oracle::digits_q(kind == CylinderKind::Alpha ? a0q : a0q + 1, 2, a0q, len);
        const std::vector<Digit> prefix(ds.begin(), ds.end());
        CAPTURE(a0.to_string());
        const auto c = nacf::cylinder_interval(kind, prefix, 2);
        REQUIRE(c.contains(ExactNumber(a0)));

        // Ten interior samples spread between two rational inner bounds.
        const ExactNumber mid(nacf::rational_midpoint(c.lo, c.hi));
        const mpq_class lo_q = mpq(nacf::rational_between(c.lo, mid));
        const mpq_class hi_q = mpq(nacf::rational_between(mid, c.hi));
        for (int j = 0; j < 10; ++j) {
            const mpq_class xq = lo_q + (hi_q - lo_q) * mpq_class(j, 9);
            CHECK(oracle::digits_q(kind == CylinderKind::Alpha ? xq : xq + 1, 2, xq, len) == ds);
        }
        // Just outside.
        auto outside_fails = [&](const ExactNumber& x) {
            if (x.sign() <= 0 || top < x) return;
            const mpq_class xq = mpq(x.as_rational());
            CHECK(oracle::digits_q(kind == CylinderKind::Alpha ? xq : xq + 1, 2, xq, len) != ds);
        };
        outside_fails(near_edge(c.lo, 12, false));
        if (c.hi_open) outside_fails(near_edge(c.hi, 12, true));
    }
}

TEST_CASE("property: cylinder endpoints are boundary parameters") {
    // At an endpoint e strictly inside (0, sqrt(2) - 1), some iterate of the
    // start point under T_{2,e} lands exactly on e or e + 1.
    std::mt19937_64 rng(59);
    const ExactNumber top = nacf::alpha_max(2);
    for (int i = 0; i < 30; ++i) {
        const BigRational a0(3 + static_cast<long>(rng() % 400), 1000);
        const auto kind = rng() % 2 ? CylinderKind::Alpha : CylinderKind::AlphaPlusOne;
        const std::size_t len = 1 + rng() % 5;
        const Params p0(2, ExactNumber(a0));
        const auto w = nacf::expand(kind == CylinderKind::Alpha ? p0.alpha() : p0.upper(), p0, len);
        const auto c = nacf::cylinder_interval(kind, w.prefix, 2);
        for (const ExactNumber& e : {c.lo, c.hi}) {
            if (e.sign() <= 0 || e == top) continue;
            const Params p(2, e);
            ExactNumber x = kind == CylinderKind::Alpha ? p.alpha() : p.upper();
            bool hit = false;
            for (std::size_t j = 0; j < len && !hit; ++j) {
                x = nacf::step(x, p).next;
                hit = x == p.alpha() || x == p.upper();
            }
            CAPTURE(e.to_string());
            CHECK(hit);
        }
    }
}

}  // TEST_SUITE
