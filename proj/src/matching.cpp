#include "nacf/matching.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace nacf {

namespace {

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

struct Orbit {
    std::vector<ExactNumber> states;  // steps + 1 entries
    std::vector<Digit> digits;        // steps entries
};

Orbit run(const ExactNumber& x, const Params& p, std::size_t steps) {
    Orbit o;
    o.states.reserve(steps + 1);
    o.digits.reserve(steps);
    o.states.push_back(x);
    for (std::size_t i = 0; i < steps; ++i) {
        auto s = step(o.states.back(), p);
        o.digits.push_back(s.digit);
        o.states.push_back(std::move(s.next));
    }
    return o;
}

std::vector<Digit> head(const std::vector<Digit>& d, std::size_t k) {
    return {d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k)};
}

/// prefix[k] = B_{d_1} ... B_{d_k}.
std::vector<MobiusMatrix> prefix_products(const std::vector<Digit>& digits, std::int64_t n) {
    std::vector<MobiusMatrix> out{MobiusMatrix::identity()};
    for (Digit d : digits) out.push_back(out.back() * MobiusMatrix::digit(n, d));
    return out;
}

bool less_pair(std::size_t k1, std::size_t l1, std::size_t k2, std::size_t l2) {
    return k1 + l1 != k2 + l2 ? k1 + l1 < k2 + l2 : k1 < k2;
}

Stability verdict_for(bool equivalent, std::int64_t n) {
    if (equivalent) return Stability::Stable;
    return n == 2 ? Stability::Unstable : Stability::UnknownForThisN;
}

bool strictly_less(const ExactNumber& x, const ExactNumber& y) {
    return compare_exact(x, y) == std::strong_ordering::less;
}

}  // namespace

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Unstable: return "Unstable";
        case Stability::UnknownForThisN: return "UnknownForThisN";
    }
    return "?";
}

std::string_view to_string(Obstruction o) {
    return o == Obstruction::ObstructionHolds ? "ObstructionHolds" : "HypothesesFail";
}

// ---------------------------------------------------------------------------
// ParamInterval

bool ParamInterval::contains(const ExactNumber& x) const {
    const auto a = compare_exact(lo, x);
    const auto b = compare_exact(x, hi);
    const bool above = lo_open ? a == std::strong_ordering::less : a != std::strong_ordering::greater;
    const bool below = hi_open ? b == std::strong_ordering::less : b != std::strong_ordering::greater;
    return above && below;
}

ParamInterval ParamInterval::intersect(const ParamInterval& other) const {
    ParamInterval r;
    const auto c_lo = compare_exact(lo, other.lo);
    if (c_lo == std::strong_ordering::greater) {
        r.lo = lo, r.lo_open = lo_open;
    } else if (c_lo == std::strong_ordering::less) {
        r.lo = other.lo, r.lo_open = other.lo_open;
    } else {
        r.lo = lo, r.lo_open = lo_open || other.lo_open;
    }
    const auto c_hi = compare_exact(hi, other.hi);
    if (c_hi == std::strong_ordering::less) {
        r.hi = hi, r.hi_open = hi_open;
    } else if (c_hi == std::strong_ordering::greater) {
        r.hi = other.hi, r.hi_open = other.hi_open;
    } else {
        r.hi = hi, r.hi_open = hi_open || other.hi_open;
    }
    const auto c = compare_exact(r.lo, r.hi);
    if (c == std::strong_ordering::greater ||
        (c == std::strong_ordering::equal && (r.lo_open || r.hi_open))) {
        throw Error(ErrorKind::EmptyInterval, to_string() + " and " + other.to_string() + " are disjoint");
    }
    return r;
}

std::string ParamInterval::to_string() const {
    return std::string(lo_open ? "(" : "[") + lo.to_string() + ", " + hi.to_string() + (hi_open ? ")" : "]");
}

// ---------------------------------------------------------------------------
// Matching and stability

std::optional<MatchReport> detect_matching(const BigRational& alpha, std::int64_t n,
                                           std::size_t budget) {
    const Params p(n, ExactNumber(alpha));
    const Orbit a = run(p.alpha(), p, budget);
    const Orbit b = run(p.upper(), p, budget);
    std::unordered_map<ExactNumber, std::size_t, ExactNumberHash> first_in_b;
    for (std::size_t l = 0; l < b.states.size(); ++l) first_in_b.emplace(b.states[l], l);

    std::optional<MatchReport> best;
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        if (best && k > best->k + best->l) break;
        auto it = first_in_b.find(a.states[k]);
        if (it == first_in_b.end()) continue;
        const std::size_t l = it->second;
        if (!best || less_pair(k, l, best->k, best->l)) {
            best = MatchReport{k, l, a.states[k], static_cast<std::int64_t>(k) - static_cast<std::int64_t>(l),
                               Stability::Unstable, std::nullopt};
        }
    }
    if (best) {
        const MobiusMatrix rm = MobiusMatrix::shift() * digits_matrix(head(a.digits, best->k), n);
        const MobiusMatrix m = digits_matrix(head(b.digits, best->l), n);
        best->stable = verdict_for(projective_equiv(rm, m), n);
    }
    return best;
}

StabilityResult stability_check(const BigRational& alpha, std::int64_t n, std::size_t k,
                                std::size_t l) {
    const Params p(n, ExactNumber(alpha));
    const Orbit a = run(p.alpha(), p, k);
    const Orbit b = run(p.upper(), p, l);
    if (a.states.back() != b.states.back()) {
        throw Error(ErrorKind::PrerequisiteNotMet,
                    "T^" + std::to_string(k) + "(alpha) = " + a.states.back().to_string() + " but T^" +
                        std::to_string(l) + "(alpha+1) = " + b.states.back().to_string());
    }
    StabilityResult r;
    r.rm = MobiusMatrix::shift() * digits_matrix(a.digits, n);
    r.m = digits_matrix(b.digits, n);
    r.verdict = verdict_for(projective_equiv(r.rm, r.m), n);
    return r;
}

// ---------------------------------------------------------------------------
// Cylinders

bool cylinder_contains(CylinderKind kind, const std::vector<Digit>& digits, std::int64_t n,
                       const ExactNumber& alpha) {
    const Params p(n, alpha);
    ExactNumber x = kind == CylinderKind::Alpha ? p.alpha() : p.upper();
    for (Digit want : digits) {
        auto s = step(x, p);
        if (s.digit != want) return false;
        x = std::move(s.next);
    }
    return true;
}

ParamInterval cylinder_interval(CylinderKind kind, const std::vector<Digit>& digits, std::int64_t n) {
    if (digits.empty()) throw Error(ErrorKind::EmptyInterval, "empty digit prefix");
    for (Digit d : digits) {
        if (d < 1) throw Error(ErrorKind::EmptyInterval, "digits must be positive");
    }
    const ExactNumber zero(0);
    const ExactNumber top = alpha_max(n);
    const int shift = kind == CylinderKind::Alpha ? 0 : 1;

    // The j-th digit is d_j iff N/(d_j+1+alpha) < y <= N/(d_j+alpha) for
    // y = T^{j-1}(x), clipped to [alpha, alpha+1]. With the first j-1 digits
    // fixed, x = P(y) for P = B_{d_1}...B_{d_{j-1}}, so each edge is a fixed
    // point equation x = P Q(alpha) with Q one of B_{d_j+1}, B_{d_j}, I, R.
    std::vector<ExactNumber> cuts;
    auto add_roots = [&](const MobiusMatrix& m) {
        const BigInt s(shift);
        const BigInt c2 = m.c();
        const BigInt c1 = m.d() + s * m.c() - m.a();
        const BigInt c0 = s * m.d() - m.b();
        if (sgn(c2) == 0 && sgn(c1) == 0) return;
        for (auto& r : quadratic_roots(c2, c1, c0)) {
            if (strictly_less(zero, r) && strictly_less(r, top)) cuts.push_back(std::move(r));
        }
    };
    MobiusMatrix prefix;
    for (Digit d : digits) {
        add_roots(prefix * MobiusMatrix::digit(n, d + 1));
        add_roots(prefix * MobiusMatrix::digit(n, d));
        add_roots(prefix);
        add_roots(prefix * MobiusMatrix::shift());
        // y = P^{-1}(x) has a pole at x = a/c.
        if (sgn(prefix.c()) != 0) {
            ExactNumber pole = ExactNumber::rational(prefix.a(), prefix.c()) - ExactNumber(shift);
            if (strictly_less(zero, pole) && strictly_less(pole, top)) cuts.push_back(std::move(pole));
        }
        prefix = prefix * MobiusMatrix::digit(n, d);
    }
    std::sort(cuts.begin(), cuts.end(), strictly_less);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<ExactNumber> edges;
    edges.push_back(zero);
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(top);

    // Runs of consecutive pieces joined through cut points that also belong.
    std::vector<ParamInterval> runs;
    bool prev_inside = false;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const ExactNumber sample(rational_midpoint(edges[i], edges[i + 1]));
        const bool inside = cylinder_contains(kind, digits, n, sample);
        if (inside) {
            if (prev_inside && cylinder_contains(kind, digits, n, edges[i])) {
                runs.back().hi = edges[i + 1];
            } else {
                runs.push_back({edges[i], edges[i + 1], true, true});
            }
        }
        prev_inside = inside;
    }
    if (runs.empty()) {
        throw Error(ErrorKind::EmptyInterval, "no parameter starts with the given digits");
    }
    if (runs.size() > 1) {
        throw Error(ErrorKind::InvariantViolation, "cylinder splits into " + std::to_string(runs.size()) +
                                                       " intervals");
    }
    ParamInterval r = runs.front();
    if (r.hi == top && cylinder_contains(kind, digits, n, top)) r.hi_open = false;
    return r;
}

// ---------------------------------------------------------------------------
// Matching intervals

MatchingInterval matching_interval(const BigRational& alpha, std::int64_t n, std::size_t max_exponent) {
    if (n != 2) {
        throw Error(ErrorKind::PrerequisiteNotMet, "matching intervals are only backed for N = 2");
    }
    const Params p(n, ExactNumber(alpha));
    const Orbit a = run(p.alpha(), p, max_exponent);
    const Orbit b = run(p.upper(), p, max_exponent);
    auto point = detect_matching(alpha, n, max_exponent);
    if (!point) {
        throw Error(ErrorKind::BadRational, "alpha = " + alpha.to_string() + " has no match within " +
                                                std::to_string(max_exponent) + " steps");
    }

    std::unordered_map<ExactNumber, std::vector<std::size_t>, ExactNumberHash> where_b;
    for (std::size_t l = 0; l < b.states.size(); ++l) where_b[b.states[l]].push_back(l);
    std::vector<EquivalencePair> pairs;
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        auto it = where_b.find(a.states[k]);
        if (it == where_b.end()) continue;
        for (std::size_t l : it->second) pairs.push_back({k, l});
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const EquivalencePair& x, const EquivalencePair& y) { return less_pair(x.k, x.l, y.k, y.l); });

    const auto pa = prefix_products(a.digits, n);
    const auto pb = prefix_products(b.digits, n);
    for (const auto& [k, l] : pairs) {
        const MobiusMatrix rm = MobiusMatrix::shift() * pa[k];
        if (!projective_equiv(rm, pb[l])) continue;
        MatchingInterval mi;
        mi.k = k;
        mi.l = l;
        mi.point = *point;
        mi.alpha_digits = head(a.digits, k);
        mi.alpha1_digits = head(b.digits, l);
        mi.rm = rm;
        mi.m = pb[l];
        mi.interval = cylinder_interval(CylinderKind::Alpha, mi.alpha_digits, n)
                          .intersect(cylinder_interval(CylinderKind::AlphaPlusOne, mi.alpha1_digits, n));
        if (!mi.interval.contains(p.alpha())) {
            throw Error(ErrorKind::InvariantViolation,
                        "matching interval " + mi.interval.to_string() + " misses " + alpha.to_string());
        }
        return mi;
    }
    throw Error(ErrorKind::BadRational, "no stable matching for alpha = " + alpha.to_string() +
                                            " with K, L <= " + std::to_string(max_exponent));
}

std::optional<EquivalencePair> equivalence_scan(const BigRational& alpha, std::int64_t n,
                                                std::size_t max_k, std::size_t max_l) {
    const Params p(n, ExactNumber(alpha));
    const auto pa = prefix_products(run(p.alpha(), p, max_k).digits, n);
    const auto pb = prefix_products(run(p.upper(), p, max_l).digits, n);
    std::optional<EquivalencePair> best;
    for (std::size_t k = 1; k <= max_k; ++k) {
        const MobiusMatrix rm = MobiusMatrix::shift() * pa[k];
        for (std::size_t l = 1; l <= max_l; ++l) {
            if (best && !less_pair(k, l, best->k, best->l)) break;
            if (projective_equiv(rm, pb[l])) best = EquivalencePair{k, l};
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Bad rationals

BadRationalCertificate bad_rational_certificate(int n, std::size_t scan_limit) {
    if (n < 3) throw Error(ErrorKind::InvalidParams, "bad-rational family needs n >= 3");
    BadRationalCertificate c;
    c.n = n;
    const BigInt two_n = BigInt(1) << n;
    const BigInt two_n1 = two_n * 2;
    c.alpha = BigRational(BigInt(1), two_n);
    const Params p(2, ExactNumber(c.alpha));
    const auto to_digit = [](const BigInt& v) { return static_cast<Digit>(v.get_si()); };

    c.alpha_word = expansion_word(p.alpha(), p, 200);
    c.alpha1_word = expansion_word(p.upper(), p, 200);
    const DigitWord want_a = DigitWord{{to_digit(two_n1 - 1)}, {1}}.canonical();
    const DigitWord want_b = DigitWord{{1, 2, to_digit(two_n / 2 - 1), 3}, {1}}.canonical();
    c.expansions_ok = c.alpha_word == want_a && c.alpha1_word == want_b;

    c.point_match = detect_matching(c.alpha, 2, 50);
    const bool point_ok = c.point_match && c.point_match->k == 1 && c.point_match->l == 4;

    const Orbit a = run(p.alpha(), p, 1);
    const Orbit b = run(p.upper(), p, 4);
    c.rm = MobiusMatrix::shift() * digits_matrix(a.digits, 2);
    c.m = digits_matrix(b.digits, 2);
    c.matrices_ok = c.rm == MobiusMatrix(1, two_n1 + 1, 1, two_n1 - 1) &&
                    c.m == MobiusMatrix(two_n1, 3 * two_n1 + 8, two_n1 - 2, 3 * two_n1 + 2);
    if (c.matrices_ok) c.m_hat = c.m.divided_by(2);

    // From then on both words only read the digit 1, so right-multiplying by
    // B_1 must keep each class mod 2. R M_K then has only odd entries, while
    // every primitive form of M_L has an even entry.
    const BigInt two(2);
    const MobiusMatrix b1 = MobiusMatrix::digit(2, 1);
    const MobiusMatrix all_odd(1, 1, 1, 1);
    const MobiusMatrix low_odd(0, 0, 1, 1);
    bool residues = c.matrices_ok && c.rm.mod(two) == all_odd && (all_odd * b1).mod(two) == all_odd &&
                    c.m_hat.mod(two) == low_odd && (low_odd * b1).mod(two) == low_odd;
    // M_1, M_2, M_3 lie before the tail of 1s; check their primitive forms directly.
    MobiusMatrix ml;
    for (std::size_t l = 0; l < 3 && residues; ++l) {
        ml = ml * MobiusMatrix::digit(2, b.digits[l]);
        const MobiusMatrix prim = ml.divided_by(ml.content());
        residues = prim.mod(two) != all_odd;
    }
    c.residues_ok = residues;

    c.scan_limit = scan_limit;
    c.scan_hit = equivalence_scan(c.alpha, 2, scan_limit, scan_limit);
    c.valid = c.expansions_ok && point_ok && c.matrices_ok && c.residues_ok && !c.scan_hit;
    return c;
}

std::string BadRationalCertificate::text() const {
    std::ostringstream out;
    out << "alpha = " << alpha.to_string() << " (n = " << n << "), N = 2\n";
    out << "expansion of alpha:   " << alpha_word.to_string() << "\n";
    out << "expansion of alpha+1: " << alpha1_word.to_string() << "\n";
    out << "expansions: " << (expansions_ok ? "ok" : "MISMATCH") << "\n";
    if (point_match) {
        out << "point matching (K,L) = (" << point_match->k << "," << point_match->l << ") at "
            << point_match->matched_value.to_string() << "\n";
    } else {
        out << "point matching: none found\n";
    }
    out << "RM_1 = " << rm.to_string() << "\n";
    out << "M_4  = " << m.to_string() << "\n";
    out << "M_4/2 = " << m_hat.to_string() << "\n";
    out << "matrices: " << (matrices_ok ? "ok" : "MISMATCH") << "\n";
    out << "mod 2: RM_1 B_1^k = [[1,1],[1,1]], (M_4/2) B_1^k = [[0,0],[1,1]]: "
        << (residues_ok ? "ok" : "FAILED") << "\n";
    out << "equivalence scan K,L <= " << scan_limit << ": ";
    if (scan_hit) {
        out << "equivalent at (" << scan_hit->k << "," << scan_hit->l << ")\n";
    } else {
        out << "none\n";
    }
    out << "certificate: " << (valid ? "valid" : "INVALID") << "\n";
    return out.str();
}

Obstruction no_matching_obstruction(const BigRational& alpha, std::int64_t n) {
    const Params p(n, ExactNumber(alpha));
    const BigInt t0 = alpha.numerator();
    const BigInt s0 = alpha.denominator();
    const BigInt bn = big(n);
    const bool holds = in_coprime_region(p) && !mpz_divisible_p(t0.get_mpz_t(), bn.get_mpz_t()) &&
                       !mpz_divisible_p(BigInt(t0 + s0).get_mpz_t(), bn.get_mpz_t());
    return holds ? Obstruction::ObstructionHolds : Obstruction::HypothesesFail;
}

// ---------------------------------------------------------------------------
// Matching families

std::string_view to_string(Family f) {
    switch (f) {
        case Family::I: return "i";
        case Family::II: return "ii";
        case Family::III: return "iii";
        case Family::IV: return "iv";
    }
    return "?";
}

Family parse_family(std::string_view text) {
    if (text == "i") return Family::I;
    if (text == "ii") return Family::II;
    if (text == "iii") return Family::III;
    if (text == "iv") return Family::IV;
    throw Error(ErrorKind::Parse, "unknown family '" + std::string(text) + "'");
}

FamilyMember family_member(Family f, std::int64_t k) {
    if (k < 0) throw Error(ErrorKind::InvalidParams, "k must be >= 0");
    const BigInt K = big(k);
    const auto d = [](const BigInt& v) { return static_cast<Digit>(v.get_si()); };
    FamilyMember m{f, k, BigRational(0), {}, {}, 0, 0, 0, 0, {}, {}, {}, {}};
    switch (f) {
        case Family::I:
            m.alpha = BigRational(BigInt(2), 9 + 4 * K);
            m.alpha_word = {{d(8 + 4 * K)}, {1}};
            m.alpha1_word = {{1, 2, d(K + 1), 2, 2}, {1}};
            m.point_k = 1, m.point_l = 5, m.stable_k = 3, m.stable_l = 5;
            m.rm = MobiusMatrix(4 * K + 12, 12 * K + 32, 4 * K + 10, 12 * K + 26);
            m.m = m.rm.scaled(2);
            m.lo = ExactNumber::surd(-17 - 8 * K, 1, 10 + 4 * K, 369 + 304 * K + 64 * K * K);
            m.hi = ExactNumber::surd(-2 - K, 1, 2 + K, 6 + 5 * K + K * K);
            break;
        case Family::II:
            m.alpha = BigRational(BigInt(8), 43 + 16 * K);
            m.alpha_word = {{d(10 + 4 * K), 2, 2}, {1}};
            m.alpha1_word = {{1, 2, d(K + 2), 10, 2}, {1}};
            m.point_k = 2, m.point_l = 4, m.stable_k = 5, m.stable_l = 5;
            m.rm = MobiusMatrix(40 * K + 128, 88 * K + 280, 40 * K + 108, 88 * K + 236);
            m.m = m.rm;
            m.lo = ExactNumber::surd(-81 - 32 * K, 1, 54 + 20 * K, 8289 + 5824 * K + 1024 * K * K);
            m.hi = ExactNumber::surd(-10 - 4 * K, 1, 8 + 3 * K, 132 + 92 * K + 16 * K * K);
            break;
        case Family::III:
            m.alpha = BigRational(BigInt(13), 72 + 26 * K);
            m.alpha_word = {{d(10 + 4 * K), 1, 2, 5}, {1}};
            m.alpha1_word = {{1, 2, d(K + 2), 7, 4, 2}, {1}};
            m.point_k = 4, m.point_l = 6, m.stable_k = 6, m.stable_l = 6;
            m.rm = MobiusMatrix(120 * K + 392, 296 * K + 968, 120 * K + 332, 296 * K + 820);
            m.m = m.rm;
            m.lo = ExactNumber::surd(-133 - 52 * K, 1, 122 + 44 * K, 24033 + 16120 * K + 2704 * K * K);
            m.hi = ExactNumber::surd(-273 - 104 * K, 1, 166 + 60 * K,
                                     13 * (7061 + 4848 * K + 832 * K * K));
            break;
        case Family::IV:
            m.alpha = BigRational(BigInt(30), 191 + 60 * K);
            m.alpha_word = {{d(12 + 4 * K), 2, 2, 2, 2}, {1}};
            m.alpha1_word = {{1, 2, d(K + 2), 2, 2, 12, 2}, {1}};
            m.point_k = 4, m.point_l = 6, m.stable_k = 7, m.stable_l = 7;
            m.rm = MobiusMatrix(304 * K + 1120, 656 * K + 2416, 304 * K + 968, 656 * K + 2088);
            m.m = m.rm;
            m.lo = ExactNumber::surd(-363 - 120 * K, 1, 242 + 76 * K,
                                     3 * (53603 + 32080 * K + 4800 * K * K));
            m.hi = ExactNumber::surd(-45 - 15 * K, 1, 35 + 11 * K, 15 * (170 + 101 * K + 15 * K * K));
            break;
    }
    m.alpha_word = m.alpha_word.canonical();
    m.alpha1_word = m.alpha1_word.canonical();
    return m;
}

namespace {

MemberCheck check_member(Family f, std::int64_t k, bool table_only) {
    MemberCheck out;
    out.k = k;
    try {
        const FamilyMember want = family_member(f, k);
        const Params p(2, ExactNumber(want.alpha));
        auto fail = [&](const std::string& what) {
            out.mismatch = what;
            return out;
        };
        const DigitWord wa = expansion_word(p.alpha(), p, 500);
        if (!(wa == want.alpha_word)) {
            return fail("expansion of alpha: got " + wa.to_string() + ", expected " + want.alpha_word.to_string());
        }
        const DigitWord wb = expansion_word(p.upper(), p, 500);
        if (!(wb == want.alpha1_word)) {
            return fail("expansion of alpha+1: got " + wb.to_string() + ", expected " +
                        want.alpha1_word.to_string());
        }
        std::vector<Digit> da, db;
        for (std::size_t i = 0; i < want.stable_k; ++i) da.push_back(wa.at(i));
        for (std::size_t i = 0; i < want.stable_l; ++i) db.push_back(wb.at(i));
        const MobiusMatrix rm = MobiusMatrix::shift() * digits_matrix(da, 2);
        const MobiusMatrix m = digits_matrix(db, 2);
        if (!(rm == want.rm)) return fail("RM matrix: got " + rm.to_string() + ", expected " + want.rm.to_string());
        if (!(m == want.m)) return fail("M matrix: got " + m.to_string() + ", expected " + want.m.to_string());
        if (!projective_equiv(rm, m)) return fail("projective equivalence of RM and M");
        if (!table_only) {
            const auto point = detect_matching(want.alpha, 2, 200);
            if (!point || point->k != want.point_k || point->l != want.point_l) {
                return fail("point matching exponents");
            }
            const auto st = stability_check(want.alpha, 2, want.stable_k, want.stable_l);
            if (st.verdict != Stability::Stable) return fail("stability");
            const MatchingInterval mi = matching_interval(want.alpha, 2, 40);
            if (mi.k != want.stable_k || mi.l != want.stable_l) {
                return fail("stable exponents: got (" + std::to_string(mi.k) + "," + std::to_string(mi.l) + ")");
            }
            out.interval = mi.interval;
            if (mi.interval.lo != want.lo) {
                return fail("lower endpoint: got " + mi.interval.lo.to_string() + ", expected " + want.lo.to_string());
            }
            if (mi.interval.hi != want.hi) {
                return fail("upper endpoint: got " + mi.interval.hi.to_string() + ", expected " + want.hi.to_string());
            }
        }
        out.pass = true;
    } catch (const Error& e) {
        out.mismatch = std::string(to_string(e.kind())) + ": " + e.what();
    }
    return out;
}

}  // namespace

std::size_t VerifyReport::passed() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const MemberCheck& c) { return c.pass; }));
}

VerifyReport verify_theorem_intervals(Family f, const std::vector<std::int64_t>& ks, bool table_only,
                                      unsigned jobs) {
    VerifyReport rep;
    rep.family = f;
    rep.table_only = table_only;
    rep.checks.resize(ks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ks.size(); i = next++) {
            rep.checks[i] = check_member(f, ks[i], table_only);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rep;
}

}  // namespace nacf
