#pragma once

// Matching of the orbits of alpha and alpha + 1, the matrix test for stable
// matching, cylinder sets in parameter space and bad-rational certificates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nacf/expansion.hpp"

namespace nacf {

enum class Stability { Stable, Unstable, UnknownForThisN };
std::string_view to_string(Stability s);

struct ParamInterval {
    ExactNumber lo;
    ExactNumber hi;
    bool lo_open = true;
    bool hi_open = true;

    bool contains(const ExactNumber& x) const;
    /// Throws EmptyInterval when the intersection is empty.
    ParamInterval intersect(const ParamInterval& other) const;
    friend bool operator==(const ParamInterval&, const ParamInterval&) = default;
    /// "(lo, hi)" with brackets reflecting openness.
    std::string to_string() const;
};

struct MatchReport {
    std::size_t k = 0;
    std::size_t l = 0;
    ExactNumber matched_value;
    std::int64_t index = 0;  // K - L
    Stability stable = Stability::Unstable;
    std::optional<std::string> obstruction;
};

/// Smallest (K, L) by K + L, then K, with T^K(alpha) = T^L(alpha + 1), looking
/// at budget steps of each orbit. nullopt when nothing matches within budget.
std::optional<MatchReport> detect_matching(const BigRational& alpha, std::int64_t n,
                                           std::size_t budget);

struct StabilityResult {
    Stability verdict = Stability::Unstable;
    MobiusMatrix rm;  // R * M_{alpha,alpha,K}
    MobiusMatrix m;   // M_{alpha,alpha+1,L}
};

/// Throws PrerequisiteNotMet unless T^K(alpha) = T^L(alpha + 1).
StabilityResult stability_check(const BigRational& alpha, std::int64_t n, std::size_t k,
                                std::size_t l);

enum class CylinderKind { Alpha, AlphaPlusOne };

/// Parameters alpha in (0, sqrt(N) - 1] whose own expansion (of alpha, or of
/// alpha + 1) starts with `digits`. Throws EmptyInterval if there are none.
ParamInterval cylinder_interval(CylinderKind kind, const std::vector<Digit>& digits, std::int64_t n);

/// True iff the expansion of alpha (or alpha + 1) under T_{N,alpha} starts with digits.
bool cylinder_contains(CylinderKind kind, const std::vector<Digit>& digits, std::int64_t n,
                       const ExactNumber& alpha);

struct MatchingInterval {
    ParamInterval interval;
    std::size_t k = 0;
    std::size_t l = 0;
    MatchReport point;
    std::vector<Digit> alpha_digits;   // first K digits of alpha
    std::vector<Digit> alpha1_digits;  // first L digits of alpha + 1
    MobiusMatrix rm;
    MobiusMatrix m;
};

/// N = 2 only. Scans match pairs with K, L <= max_exponent for the first stable
/// one and intersects the two cylinders. BadRational when none is stable.
MatchingInterval matching_interval(const BigRational& alpha, std::int64_t n,
                                   std::size_t max_exponent);

struct EquivalencePair {
    std::size_t k;
    std::size_t l;
};

/// First (K, L) in 1..max_k x 1..max_l with R M_{alpha,alpha,K} ~ M_{alpha,alpha+1,L},
/// regardless of whether the points match.
std::optional<EquivalencePair> equivalence_scan(const BigRational& alpha, std::int64_t n,
                                                std::size_t max_k, std::size_t max_l);

struct BadRationalCertificate {
    int n = 0;
    BigRational alpha;
    DigitWord alpha_word;
    DigitWord alpha1_word;
    bool expansions_ok = false;
    std::optional<MatchReport> point_match;
    MobiusMatrix rm;     // R M_{alpha,alpha,1}
    MobiusMatrix m;      // M_{alpha,alpha+1,4}
    MobiusMatrix m_hat;  // m / 2
    bool matrices_ok = false;
    bool residues_ok = false;  // both classes mod 2 are fixed by B_1
    std::size_t scan_limit = 0;
    std::optional<EquivalencePair> scan_hit;
    bool valid = false;

    std::string text() const;
};

/// For alpha_n = 1/2^n, n >= 3: checks the expansions, the point match (1, 4),
/// the matrices and the mod-2 classes, and runs equivalence_scan up to scan_limit.
BadRationalCertificate bad_rational_certificate(int n, std::size_t scan_limit = 30);

enum class Obstruction { ObstructionHolds, HypothesesFail };
std::string_view to_string(Obstruction o);

/// (N, alpha) in K, N does not divide t0 and N does not divide t0 + s0.
Obstruction no_matching_obstruction(const BigRational& alpha, std::int64_t n);

enum class Family { I, II, III, IV };
std::string_view to_string(Family f);
Family parse_family(std::string_view text);

/// Closed-form data of one member of a matching family.
struct FamilyMember {
    Family family;
    std::int64_t k;
    BigRational alpha;
    DigitWord alpha_word;
    DigitWord alpha1_word;
    std::size_t point_k;
    std::size_t point_l;
    std::size_t stable_k;
    std::size_t stable_l;
    MobiusMatrix rm;
    MobiusMatrix m;
    ExactNumber lo;
    ExactNumber hi;
};

FamilyMember family_member(Family f, std::int64_t k);

struct MemberCheck {
    std::int64_t k = 0;
    bool pass = false;
    std::string mismatch;  // first offending component, empty on pass
    std::optional<ParamInterval> interval;
};

struct VerifyReport {
    Family family = Family::I;
    bool table_only = false;
    std::vector<MemberCheck> checks;

    std::size_t passed() const;
    bool all_pass() const { return passed() == checks.size(); }
};

/// Recomputes each member from scratch and compares with the closed forms.
/// table_only restricts to expansions and matrices. Members run on up to
/// `jobs` threads; results keep the order of ks.
VerifyReport verify_theorem_intervals(Family f, const std::vector<std::int64_t>& ks,
                                      bool table_only = false, unsigned jobs = 1);

}  // namespace nacf
