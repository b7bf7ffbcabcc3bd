#pragma once

// The (N, alpha) map T(x) = N/x - d(x) on [alpha, alpha + 1], its digits, and
// the digit-word machinery built on top of it.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nacf/exact.hpp"
#include "nacf/mobius.hpp"

namespace nacf {

/// N >= 2 and 0 < alpha <= sqrt(N) - 1, checked exactly on construction.
class Params {
public:
    Params(std::int64_t n, ExactNumber alpha);

    std::int64_t n() const { return n_; }
    const ExactNumber& alpha() const { return alpha_; }
    ExactNumber upper() const { return alpha_ + ExactNumber(1); }

    /// alpha <= x <= alpha + 1.
    bool in_domain(const ExactNumber& x) const;

private:
    std::int64_t n_;
    ExactNumber alpha_;
};

/// sqrt(N) - 1, the right end of the parameter space.
ExactNumber alpha_max(std::int64_t n);

struct DigitRange {
    Digit lo;
    Digit hi;
    bool contains(Digit d) const { return lo <= d && d <= hi; }
    friend bool operator==(const DigitRange&, const DigitRange&) = default;
};

DigitRange digit_set(const Params& p);

/// True iff every digit of D_{N,alpha} is coprime to N.
bool in_coprime_region(const Params& p);

/// d(x) = floor(N/x - alpha), lowered by one at x = alpha when N/alpha - alpha
/// is an integer. OutOfDomain unless alpha <= x <= alpha + 1.
Digit digit(const ExactNumber& x, const Params& p);

struct Step {
    Digit digit;
    ExactNumber next;
};

Step step(const ExactNumber& x, const Params& p);

/// A finite digit prefix followed by an optional repeating block.
struct DigitWord {
    std::vector<Digit> prefix;
    std::vector<Digit> period;

    bool periodic() const { return !period.empty(); }
    /// Digit at 0-based position i; requires i < prefix.size() when finite.
    Digit at(std::size_t i) const;
    /// Minimal period, with as much of the prefix absorbed into it as possible.
    DigitWord canonical() const;
    /// sigma^k of the word.
    DigitWord shifted(std::size_t k) const;

    friend bool operator==(const DigitWord&, const DigitWord&) = default;

    /// "[0; 8, (1)]"; the parenthesised block is the period.
    std::string to_string() const;
};

DigitWord parse_digit_word(std::string_view text);

/// First n digits of x.
DigitWord expand(const ExactNumber& x, const Params& p, std::size_t n);

/// Expansion of x with its period when the orbit repeats a value within
/// max_steps; otherwise the first max_steps digits with no period.
DigitWord expansion_word(const ExactNumber& x, const Params& p, std::size_t max_steps);

/// Product B_{d_1} ... B_{d_k}.
MobiusMatrix digits_matrix(const std::vector<Digit>& digits, std::int64_t n);

/// Value of the word for numerator N. A periodic tail takes the fixed point of
/// the period's matrix in (0, N); a finite word needs an explicit tail value.
ExactNumber evaluate(const DigitWord& w, std::int64_t n,
                     const std::optional<ExactNumber>& tail = std::nullopt);

struct Convergent {
    BigInt p;
    BigInt q;
    MobiusMatrix m;  // [[p_{n-1}, p_n], [q_{n-1}, q_n]]
};

/// p_n, q_n, M_n for n = 1..digits.size(). Checks det(M_n) = (-N)^n and that
/// M_n equals the product of the B_d.
std::vector<Convergent> convergents(const std::vector<Digit>& digits, std::int64_t n);

/// Order of the represented points. Branches of T are decreasing, so at the
/// first differing 1-based position k a larger digit gives a smaller point
/// when k is odd and a larger point when k is even. Undecidable if a finite
/// word runs out before a difference shows up.
std::strong_ordering alternating_compare(const DigitWord& w1, const DigitWord& w2);

/// True iff the eventually periodic word is the (N, alpha)-expansion of its
/// value: digits lie in D_{N,alpha}, word(alpha) <= sigma^k(w) < word(alpha+1)
/// for every shift k >= 1, and word(alpha) <= w <= word(alpha+1).
bool validate_expansion(const DigitWord& w, const Params& p, std::size_t budget = 2000);

/// xi_N = (-(N-2) + sqrt(N^2 + 4)) / 2, the positive solution of xi = N/(N-2+xi).
ExactNumber xi(std::int64_t n);

}  // namespace nacf
