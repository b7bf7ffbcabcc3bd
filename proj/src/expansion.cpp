#include "nacf/expansion.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace nacf {

namespace {

ExactNumber num(std::int64_t n) { return ExactNumber(static_cast<long>(n)); }

Digit to_digit(const BigInt& v) {
    if (!v.fits_slong_p()) throw Error(ErrorKind::InvariantViolation, "digit overflow");
    return static_cast<Digit>(v.get_si());
}

}  // namespace

// ---------------------------------------------------------------------------
// Params and digits

ExactNumber alpha_max(std::int64_t n) { return ExactNumber::sqrt(BigInt(static_cast<long>(n))) - 1; }

Params::Params(std::int64_t n, ExactNumber alpha) : n_(n), alpha_(std::move(alpha)) {
    if (n_ < 2) throw Error(ErrorKind::InvalidParams, "N must be at least 2");
    if (alpha_.sign() <= 0 || compare_exact(alpha_, alpha_max(n_)) == std::strong_ordering::greater) {
        throw Error(ErrorKind::InvalidParams,
                    "alpha = " + alpha_.to_string() + " outside (0, sqrt(" + std::to_string(n_) + ")-1]");
    }
}

bool Params::in_domain(const ExactNumber& x) const {
    return compare_exact(alpha_, x) != std::strong_ordering::greater &&
           compare_exact(x, upper()) != std::strong_ordering::greater;
}

DigitRange digit_set(const Params& p) {
    const ExactNumber big_n = num(p.n());
    const Digit lo = to_digit(floor_exact(big_n / p.upper() - p.alpha()));
    const Digit hi = to_digit(floor_exact(big_n / p.alpha() - p.alpha()));
    return {lo, hi};
}

bool in_coprime_region(const Params& p) {
    const DigitRange ds = digit_set(p);
    for (Digit d = ds.lo; d <= ds.hi; ++d) {
        if (std::gcd(d, p.n()) != 1) return false;
    }
    return true;
}

Digit digit(const ExactNumber& x, const Params& p) {
    if (!p.in_domain(x)) {
        throw Error(ErrorKind::OutOfDomain, x.to_string() + " is outside [alpha, alpha+1] for alpha = " +
                                                p.alpha().to_string());
    }
    const ExactNumber q = num(p.n()) / x;
    Digit d = to_digit(floor_difference(q, p.alpha()));
    if (x == p.alpha()) {
        const ExactNumber v = q - p.alpha();
        if (v.is_rational() && v.as_rational().is_integer()) --d;
    }
    return d;
}

Step step(const ExactNumber& x, const Params& p) {
    const Digit d = digit(x, p);
    return {d, num(p.n()) / x - num(d)};
}

// ---------------------------------------------------------------------------
// Digit words

Digit DigitWord::at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (period.empty()) throw Error(ErrorKind::Undecidable, "position past the end of a finite word");
    return period[(i - prefix.size()) % period.size()];
}

DigitWord DigitWord::canonical() const {
    DigitWord w = *this;
    if (w.period.empty()) return w;
    const std::size_t len = w.period.size();
    for (std::size_t l = 1; l < len; ++l) {
        if (len % l != 0) continue;
        bool ok = true;
        for (std::size_t i = l; i < len && ok; ++i) ok = w.period[i] == w.period[i - l];
        if (ok) {
            w.period.resize(l);
            break;
        }
    }
    while (!w.prefix.empty() && w.prefix.back() == w.period.back()) {
        w.prefix.pop_back();
        std::rotate(w.period.rbegin(), w.period.rbegin() + 1, w.period.rend());
    }
    return w;
}

DigitWord DigitWord::shifted(std::size_t k) const {
    DigitWord w;
    if (k <= prefix.size()) {
        w.prefix.assign(prefix.begin() + static_cast<std::ptrdiff_t>(k), prefix.end());
        w.period = period;
        return w;
    }
    if (period.empty()) return w;
    const std::size_t r = (k - prefix.size()) % period.size();
    w.period.assign(period.begin() + static_cast<std::ptrdiff_t>(r), period.end());
    w.period.insert(w.period.end(), period.begin(), period.begin() + static_cast<std::ptrdiff_t>(r));
    return w;
}

std::string DigitWord::to_string() const {
    std::ostringstream out;
    out << "[0;";
    const char* sep = " ";
    for (Digit d : prefix) {
        out << sep << d;
        sep = ", ";
    }
    if (!period.empty()) {
        out << sep << "(";
        for (std::size_t i = 0; i < period.size(); ++i) out << (i ? ", " : "") << period[i];
        out << ")";
    }
    out << "]";
    return out.str();
}

DigitWord parse_digit_word(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    auto fail = [&]() -> Error {
        return Error(ErrorKind::Parse, "cannot parse digit word '" + std::string(text) + "'");
    };
    if (s.size() < 4 || s.rfind("[0;", 0) != 0 || s.back() != ']') throw fail();
    s = s.substr(3, s.size() - 4);
    DigitWord w;
    bool in_period = false;
    bool period_closed = false;
    std::size_t i = 0;
    while (i < s.size()) {
        if (period_closed) throw fail();
        if (s[i] == ',') {
            ++i;
            continue;
        }
        if (s[i] == '(') {
            if (in_period) throw fail();
            in_period = true;
            ++i;
            continue;
        }
        if (s[i] == ')') {
            if (!in_period || w.period.empty()) throw fail();
            in_period = false;
            period_closed = true;
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw fail();
        const Digit d = std::stoll(s.substr(i, j - i));
        if (d < 1) throw fail();
        (in_period ? w.period : w.prefix).push_back(d);
        i = j;
    }
    if (in_period) throw fail();
    return w;
}

DigitWord expand(const ExactNumber& x, const Params& p, std::size_t n) {
    DigitWord w;
    ExactNumber cur = x;
    for (std::size_t i = 0; i < n; ++i) {
        auto s = step(cur, p);
        w.prefix.push_back(s.digit);
        cur = std::move(s.next);
    }
    return w;
}

DigitWord expansion_word(const ExactNumber& x, const Params& p, std::size_t max_steps) {
    std::unordered_map<ExactNumber, std::size_t, ExactNumberHash> seen;
    std::vector<Digit> digits;
    ExactNumber cur = x;
    for (std::size_t i = 0; i <= max_steps; ++i) {
        auto [it, fresh] = seen.emplace(cur, i);
        if (!fresh) {
            DigitWord w;
            w.prefix.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
            w.period.assign(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
            return w.canonical();
        }
        if (i == max_steps) break;
        auto s = step(cur, p);
        digits.push_back(s.digit);
        cur = std::move(s.next);
    }
    return DigitWord{digits, {}};
}

MobiusMatrix digits_matrix(const std::vector<Digit>& digits, std::int64_t n) {
    MobiusMatrix m;
    for (Digit d : digits) m = m * MobiusMatrix::digit(n, d);
    return m;
}

ExactNumber evaluate(const DigitWord& w, std::int64_t n, const std::optional<ExactNumber>& tail) {
    ExactNumber t;
    if (w.periodic()) {
        try {
            t = solve_mobius_fixed_point(digits_matrix(w.period, n), 0, ExactNumber(0), num(n));
        } catch (const Error& e) {
            throw Error(ErrorKind::NoValidTail, "period of " + w.to_string() + ": " + e.what());
        }
        if (t.sign() <= 0 || t == num(n)) {
            throw Error(ErrorKind::NoValidTail, "period fixed point " + t.to_string() + " not in (0, N)");
        }
    } else if (tail) {
        t = *tail;
    } else {
        throw Error(ErrorKind::NoValidTail, "finite word " + w.to_string() + " needs a tail value");
    }
    return digits_matrix(w.prefix, n).apply(t);
}

std::vector<Convergent> convergents(const std::vector<Digit>& digits, std::int64_t n) {
    std::vector<Convergent> out;
    out.reserve(digits.size());
    const BigInt big_n(static_cast<long>(n));
    BigInt p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;
    BigInt det_expected = 1;
    MobiusMatrix product;
    for (Digit d : digits) {
        const BigInt bd(static_cast<long>(d));
        BigInt p_next = bd * p_cur + big_n * p_prev;
        BigInt q_next = bd * q_cur + big_n * q_prev;
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p_next);
        q_cur = std::move(q_next);
        MobiusMatrix m(p_prev, p_cur, q_prev, q_cur);
        product = product * MobiusMatrix::digit(n, d);
        det_expected *= -big_n;
        if (m.det() != det_expected || !(m == product)) {
            throw Error(ErrorKind::InvariantViolation, "convergent matrix " + m.to_string() +
                                                           " disagrees with the digit product");
        }
        out.push_back({p_cur, q_cur, std::move(m)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Alternating order

std::strong_ordering alternating_compare(const DigitWord& w1, const DigitWord& w2) {
    std::size_t limit;
    if (w1.periodic() && w2.periodic()) {
        limit = std::max(w1.prefix.size(), w2.prefix.size()) + std::lcm(w1.period.size(), w2.period.size());
    } else if (!w1.periodic() && !w2.periodic()) {
        limit = std::min(w1.prefix.size(), w2.prefix.size());
    } else {
        limit = w1.periodic() ? w2.prefix.size() : w1.prefix.size();
    }
    for (std::size_t i = 0; i < limit; ++i) {
        const Digit a = w1.at(i);
        const Digit b = w2.at(i);
        if (a == b) continue;
        const bool odd_position = (i % 2) == 0;  // 1-based position i+1
        const bool first_larger_point = odd_position ? a < b : a > b;
        return first_larger_point ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (w1.periodic() && w2.periodic()) return std::strong_ordering::equal;
    if (!w1.periodic() && !w2.periodic() && w1.prefix.size() == w2.prefix.size()) {
        return std::strong_ordering::equal;
    }
    throw Error(ErrorKind::Undecidable,
                "cannot order " + w1.to_string() + " and " + w2.to_string() + " from the given digits");
}

bool validate_expansion(const DigitWord& w, const Params& p, std::size_t budget) {
    if (!w.periodic()) return false;
    const DigitRange ds = digit_set(p);
    for (Digit d : w.prefix) {
        if (!ds.contains(d)) return false;
    }
    for (Digit d : w.period) {
        if (!ds.contains(d)) return false;
    }
    const DigitWord lower = expansion_word(p.alpha(), p, budget);
    const DigitWord upper = expansion_word(p.upper(), p, budget);
    const std::size_t shifts = w.prefix.size() + w.period.size();
    for (std::size_t k = 0; k < shifts; ++k) {
        const DigitWord s = w.shifted(k);
        if (alternating_compare(lower, s) == std::strong_ordering::greater) return false;
        const auto top = alternating_compare(s, upper);
        if (top == std::strong_ordering::greater) return false;
        if (k > 0 && top == std::strong_ordering::equal) return false;
    }
    return true;
}

ExactNumber xi(std::int64_t n) {
    const BigInt big_n(static_cast<long>(n));
    return ExactNumber::surd(-(big_n - 2), 1, 2, big_n * big_n + 4);
}

}  // namespace nacf
