#pragma once

// The parameter window (alpha_min, sqrt(N) - 1]: where the digit set jumps,
// which pieces lie in the coprime region K, and where odd N rules out matching.

#include <cstdint>
#include <string>
#include <vector>

#include "nacf/matching.hpp"

namespace nacf {

/// Default left edge of the window.
BigRational default_alpha_min();

/// Every alpha in (alpha_min, sqrt(N) - 1] with N/alpha - alpha = m or
/// N/(alpha+1) - alpha = m for an integer m, sorted and deduplicated.
/// sqrt(N) - 1 is always the last entry.
std::vector<ExactNumber> digit_breakpoints(std::int64_t n, const ExactNumber& alpha_min);

struct DigitSetCell {
    ParamInterval interval;  // (lo, hi]
    Digit digit_lo = 0;
    Digit digit_hi = 0;
    bool in_k = false;
};

/// Cells tiling (alpha_min, sqrt(N) - 1]; the digit set of each cell is
/// evaluated at an exact interior rational.
std::vector<DigitSetCell> kset(std::int64_t n, const ExactNumber& alpha_min);

/// (1, sqrt(N) - 1] for N = 5, 7; ((-3 + sqrt(9 + 4N))/2, sqrt(N) - 1] for odd
/// N >= 9. NotApplicable otherwise. Each region is checked to be made of K cells.
std::vector<ParamInterval> no_matching_regions(std::int64_t n);

struct KsetRow {
    std::int64_t n;
    DigitSetCell cell;
};

/// kset for N = 2..n_max, in order of N. Independent N run on up to `jobs` threads.
std::vector<KsetRow> kset_plot_rows(std::int64_t n_max, const ExactNumber& alpha_min, unsigned jobs = 1);

/// CSV with header N,lo,hi,in_K,digit_lo,digit_hi; decimals rounded to `precision` places.
std::string kset_csv(const std::vector<KsetRow>& rows, int precision);

/// JSON array of {N, lo, hi, lo_exact, hi_exact, in_K, digit_lo, digit_hi}.
std::string kset_json(const std::vector<KsetRow>& rows, int precision);

}  // namespace nacf
