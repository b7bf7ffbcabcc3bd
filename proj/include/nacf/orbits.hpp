#pragma once

// Exact orbits of T_{N,alpha} with cycle detection, for rational starts
// (tracking raw numerator/denominator pairs) and quadratic irrationals
// (tracking the coefficients of the minimal polynomial).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nacf/expansion.hpp"

namespace nacf {

inline constexpr std::size_t kDefaultBudget = 1000;

/// Unreduced state t_n / s_n with t_{n+1} = N s_n - d_{n+1} t_n, s_{n+1} = t_n.
struct RawPair {
    BigInt t;
    BigInt s;
};

/// A_n x^2 + B_n x + C_n = 0, with x_n = (-B_n + sign*sqrt(B_n^2 - 4 A_n C_n)) / (2 A_n).
struct QuadCoeffs {
    BigInt a;
    BigInt b;
    BigInt c;
    int root_sign = 1;

    BigInt discriminant() const { return b * b - 4 * a * c; }
    /// Divided by gcd(A, B, C) with A > 0; root_sign follows the sign flip.
    QuadCoeffs normalized() const;
};

enum class Verdict { Periodic, NoPeriodWithinBudget };

struct OrbitTrace {
    std::int64_t n = 0;
    /// states[k] = T^k(x0); digits[k] is the digit read at states[k].
    std::vector<ExactNumber> states;
    std::vector<Digit> digits;
    std::vector<RawPair> raw;         // rational orbits only
    std::vector<QuadCoeffs> coeffs;   // quadratic orbits only (recurrence values)

    Verdict verdict = Verdict::NoPeriodWithinBudget;
    std::size_t pre_period = 0;
    std::size_t period = 0;

    bool periodic() const { return verdict == Verdict::Periodic; }
    /// Step at which a value first repeats: pre_period + period.
    std::size_t first_repeat() const { return pre_period + period; }
    bool reaches_one() const;
    /// "Periodic pre=25 period=38" or "NoPeriodWithinBudget steps=300".
    std::string summary() const;
};

OrbitTrace orbit_rational(const BigRational& x, const Params& p, std::size_t budget = kDefaultBudget);

/// Throws NotIrrational for rational x0; InvariantViolation if the root picked
/// out by the coefficient recurrences ever disagrees with the iterated surd.
OrbitTrace orbit_quadratic(const ExactNumber& x0, const Params& p, std::size_t budget = kDefaultBudget);

/// Minimal polynomial of a quadratic irrational, primitive with A > 0.
QuadCoeffs minimal_coeffs(const QuadraticSurd& x);

/// The root of (A, B, C) chosen by root_sign, in Q(sqrt(d)) for squarefree d.
ExactNumber coeff_root(const QuadCoeffs& q, const BigInt& squarefree_d);

/// B_n^2 - 4 A_n C_n = N^{2n} (B_0^2 - 4 A_0 C_0) at every recorded step.
bool discriminant_check(const OrbitTrace& trace);

/// True iff the orbit hits exactly 1 within budget; when it does, the digits
/// from there on must all be N - 1 (InvariantViolation otherwise).
bool reaches_one(const BigRational& x, const Params& p, std::size_t budget = kDefaultBudget);

struct DivisibilityReport {
    std::vector<BigInt> residues;          // t_n mod N
    bool foreign_common_factor = false;    // some prime not dividing N divides t_n and s_n
    std::optional<std::size_t> first_foreign_step;
    bool t_strictly_increasing = true;
    bool n_divides_some_t = false;         // N | t_n for some n
    bool residue_law = true;               // t_{n+1} = -d_{n+1} t_n (mod N)
};

DivisibilityReport divisibility_diagnostics(const OrbitTrace& trace);

enum class CertificateKind { CertifiedNonPeriodic, NotCertified };

struct NonPeriodicityCertificate {
    CertificateKind kind = CertificateKind::NotCertified;
    std::string reason;
};

/// Certifies non-periodicity only from verifiable hypotheses: rational x0
/// with (N, alpha) in K and alpha > 1, or a quadratic x0 with (N, alpha) in
/// K, N odd and gcd(C_0, N) = 1. x0 must lie in [alpha, alpha + 1].
NonPeriodicityCertificate nonperiodicity_certificate(const ExactNumber& x0, const Params& p);

/// One JSON object per line: {n, digit, value, t, s} or {n, digit, A, B, C}.
std::string trace_json_lines(const OrbitTrace& trace);

}  // namespace nacf
