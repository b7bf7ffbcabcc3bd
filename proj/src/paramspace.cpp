#include "nacf/paramspace.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <iterator>
#include <numeric>
#include <sstream>
#include <thread>

namespace nacf {

namespace {

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

bool strictly_less(const ExactNumber& x, const ExactNumber& y) {
    return compare_exact(x, y) == std::strong_ordering::less;
}

}  // namespace

BigRational default_alpha_min() { return BigRational(BigInt(1), BigInt(100)); }

std::vector<ExactNumber> digit_breakpoints(std::int64_t n, const ExactNumber& alpha_min) {
    if (n < 2) throw Error(ErrorKind::InvalidParams, "N must be at least 2");
    if (alpha_min.sign() <= 0) throw Error(ErrorKind::InvalidParams, "alpha_min must be positive");
    const ExactNumber top = alpha_max(n);
    const BigInt bn = big(n);
    // Both quantities are below N/alpha_min on the window.
    const BigInt m_max = floor_exact(ExactNumber(bn) / alpha_min) + 1;
    // Each family of roots decreases in m, so walk m downwards and merge.
    std::vector<ExactNumber> from_top, from_bottom;
    auto keep = [&](std::vector<ExactNumber>& dst, ExactNumber x) {
        if (strictly_less(alpha_min, x) && !strictly_less(top, x)) dst.push_back(std::move(x));
    };
    for (BigInt m = m_max; m >= 0; --m) {
        keep(from_top, ExactNumber::surd(-m, 1, 2, m * m + 4 * bn));
        keep(from_bottom, ExactNumber::surd(-(m + 1), 1, 2, (m + 1) * (m + 1) - 4 * (m - bn)));
    }
    std::vector<ExactNumber> out;
    out.reserve(from_top.size() + from_bottom.size() + 1);
    std::merge(from_top.begin(), from_top.end(), from_bottom.begin(), from_bottom.end(),
               std::back_inserter(out), strictly_less);
    if (strictly_less(alpha_min, top)) out.push_back(top);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<DigitSetCell> kset(std::int64_t n, const ExactNumber& alpha_min) {
    const std::vector<ExactNumber> cuts = digit_breakpoints(n, alpha_min);
    if (cuts.empty()) {
        throw Error(ErrorKind::InvalidParams, "alpha_min = " + alpha_min.to_string() + " leaves no window");
    }
    std::vector<DigitSetCell> cells;
    ExactNumber lo = alpha_min;
    for (const auto& hi : cuts) {
        const Params p(n, ExactNumber(rational_midpoint(lo, hi)));
        const DigitRange ds = digit_set(p);
        DigitSetCell c;
        c.interval = ParamInterval{lo, hi, true, false};
        c.digit_lo = ds.lo;
        c.digit_hi = ds.hi;
        c.in_k = in_coprime_region(p);
        cells.push_back(std::move(c));
        lo = hi;
    }
    return cells;
}

std::vector<ParamInterval> no_matching_regions(std::int64_t n) {
    if (n < 5 || n % 2 == 0) {
        throw Error(ErrorKind::NotApplicable, "no-matching regions need odd N >= 5");
    }
    const ExactNumber top = alpha_max(n);
    const ExactNumber lo = n <= 7 ? ExactNumber(1) : ExactNumber::surd(-3, 1, 2, 9 + 4 * big(n));
    for (const auto& c : kset(n, lo)) {
        bool coprime = c.in_k;
        for (Digit d = c.digit_lo; d <= c.digit_hi && coprime; ++d) coprime = std::gcd(d, n) == 1;
        if (!coprime) {
            throw Error(ErrorKind::InvariantViolation,
                        "cell " + c.interval.to_string() + " of the region is not in K");
        }
    }
    return {ParamInterval{lo, top, true, false}};
}

std::vector<KsetRow> kset_plot_rows(std::int64_t n_max, const ExactNumber& alpha_min, unsigned jobs) {
    if (n_max < 2) throw Error(ErrorKind::InvalidParams, "N_max must be at least 2");
    const std::size_t count = static_cast<std::size_t>(n_max - 1);
    std::vector<std::vector<DigitSetCell>> per_n(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            const std::int64_t n = static_cast<std::int64_t>(i) + 2;
            if (strictly_less(alpha_min, alpha_max(n))) per_n[i] = kset(n, alpha_min);
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<KsetRow> rows;
    for (std::size_t i = 0; i < count; ++i) {
        for (auto& c : per_n[i]) rows.push_back({static_cast<std::int64_t>(i) + 2, std::move(c)});
    }
    return rows;
}

std::string kset_csv(const std::vector<KsetRow>& rows, int precision) {
    std::ostringstream out;
    out << "N,lo,hi,in_K,digit_lo,digit_hi\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.cell.interval.lo.to_decimal(precision) << ','
            << r.cell.interval.hi.to_decimal(precision) << ',' << (r.cell.in_k ? "true" : "false") << ','
            << r.cell.digit_lo << ',' << r.cell.digit_hi << '\n';
    }
    return out.str();
}

std::string kset_json(const std::vector<KsetRow>& rows, int precision) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["N"] = r.n;
        o["lo"] = r.cell.interval.lo.to_decimal(precision);
        o["hi"] = r.cell.interval.hi.to_decimal(precision);
        o["lo_exact"] = r.cell.interval.lo.to_string();
        o["hi_exact"] = r.cell.interval.hi.to_string();
        o["in_K"] = r.cell.in_k;
        o["digit_lo"] = r.cell.digit_lo;
        o["digit_hi"] = r.cell.digit_hi;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

}  // namespace nacf
