#include "nacf/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <regex>
#include <utility>
#include <vector>

namespace nacf {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::MixedRadicands: return "MixedRadicands";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::NegativeInput: return "NegativeInput";
        case ErrorKind::NoRootInRange: return "NoRootInRange";
        case ErrorKind::DegenerateEquation: return "DegenerateEquation";
        case ErrorKind::AmbiguousRoot: return "AmbiguousRoot";
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::NotIrrational: return "NotIrrational";
        case ErrorKind::NoValidTail: return "NoValidTail";
        case ErrorKind::Undecidable: return "Undecidable";
        case ErrorKind::PoleInput: return "PoleInput";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::PrerequisiteNotMet: return "PrerequisiteNotMet";
        case ErrorKind::EmptyInterval: return "EmptyInterval";
        case ErrorKind::BadRational: return "BadRational";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::MismatchDetected: return "MismatchDetected";
    }
    return "Error";
}

// ---------------------------------------------------------------------------
// Integers

BigInt integer_sqrt(const BigInt& n) {
    if (sgn(n) < 0) throw Error(ErrorKind::NegativeInput, "integer_sqrt of " + n.get_str());
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt floor_div(const BigInt& n, const BigInt& c) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), c.get_mpz_t());
    return q;
}

std::size_t hash_value(const BigInt& n) noexcept {
    const mpz_srcptr z = n.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(z->_mp_size) * 0x9e3779b97f4a7c15ULL;
    const int limbs = std::abs(z->_mp_size);
    for (int i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(z->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

BigInt gcd(const BigInt& x, const BigInt& y) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return g;
}

namespace {

BigInt lcm(const BigInt& x, const BigInt& y) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return l;
}

bool is_perfect_square(const BigInt& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// n = square^2 * core with core squarefree. Trial division only needs to run
// while p^3 <= remaining: what is left afterwards is 1, a prime, a product of
// two distinct primes, or a prime square.
std::pair<BigInt, BigInt> squarefree_split(BigInt n) {
    BigInt square = 1;
    BigInt core = 1;
    auto pull = [&](const BigInt& p) {
        const BigInt p2 = p * p;
        while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
            n /= p2;
            square *= p;
        }
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            core *= p;
        }
    };
    pull(BigInt(2));
    for (BigInt p = 3; p * p * p <= n; p += 2) pull(p);
    if (n > 1 && is_perfect_square(n)) {
        square *= integer_sqrt(n);
        n = 1;
    }
    core *= n;
    return {square, core};
}

// x = r + s*sqrt(d), d squarefree > 1 or s = 0.
struct Field {
    BigRational r;
    BigRational s;
    BigInt d;
};

Field to_field(const ExactNumber& x) {
    return {x.rational_part(), x.sqrt_coefficient(), x.radicand()};
}

BigInt common_radicand(const Field& x, const Field& y) {
    const bool xi = x.s.sign() != 0;
    const bool yi = y.s.sign() != 0;
    if (xi && yi && x.d != y.d) {
        throw Error(ErrorKind::MixedRadicands,
                    "sqrt(" + x.d.get_str() + ") and sqrt(" + y.d.get_str() + ")");
    }
    return xi ? x.d : (yi ? y.d : BigInt(0));
}

// Sign of a + b*sqrt(d) for integers, d >= 0.
int surd_sign(const BigInt& a, const BigInt& b, const BigInt& d) {
    const int sa = sgn(a);
    const int sb = sgn(b);
    if (sb == 0 || sgn(d) == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    const BigInt lhs = a * a;
    const BigInt rhs = b * b * d;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

int field_sign(const Field& x) {
    if (x.s.sign() == 0) return x.r.sign();
    const BigInt c = lcm(x.r.denominator(), x.s.denominator());
    const BigRational cq(c);
    return surd_sign((x.r * cq).numerator(), (x.s * cq).numerator(), x.d);
}

std::strong_ordering from_sign(int s) {
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace

// ---------------------------------------------------------------------------
// BigRational

BigRational::BigRational(const BigInt& num, const BigInt& den) {
    if (sgn(den) == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

BigRational BigRational::operator-() const { return BigRational(mpq_class(-v_)); }
BigRational operator+(const BigRational& x, const BigRational& y) {
    return BigRational(mpq_class(x.v_ + y.v_));
}
BigRational operator-(const BigRational& x, const BigRational& y) {
    return BigRational(mpq_class(x.v_ - y.v_));
}
BigRational operator*(const BigRational& x, const BigRational& y) {
    return BigRational(mpq_class(x.v_ * y.v_));
}
BigRational operator/(const BigRational& x, const BigRational& y) {
    if (sgn(y.v_) == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return BigRational(mpq_class(x.v_ / y.v_));
}

std::strong_ordering operator<=>(const BigRational& x, const BigRational& y) {
    return from_sign(cmp(x.v_, y.v_));
}

std::string BigRational::to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

// ---------------------------------------------------------------------------
// QuadraticSurd

QuadraticSurd QuadraticSurd::conjugate() const { return QuadraticSurd(a_, -b_, c_, d_); }

std::string QuadraticSurd::to_string() const {
    std::string out = "(" + a_.get_str();
    out += sgn(b_) < 0 ? "-" : "+";
    out += BigInt(abs(b_)).get_str() + "*sqrt(" + d_.get_str() + "))/" + c_.get_str();
    return out;
}

// ---------------------------------------------------------------------------
// ExactNumber

ExactNumber ExactNumber::rational(const BigInt& num, const BigInt& den) {
    return ExactNumber(BigRational(num, den));
}

ExactNumber ExactNumber::surd(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
    if (sgn(c) == 0) throw Error(ErrorKind::DivisionByZero, "surd with zero denominator");
    if (sgn(d) < 0) throw Error(ErrorKind::NegativeInput, "negative radicand " + d.get_str());
    if (sgn(b) == 0 || sgn(d) == 0) return rational(a, c);
    auto [square, core] = squarefree_split(d);
    const BigRational r(a, c);
    const BigRational s(b * square, c);
    if (core == 1) return ExactNumber(r + s);
    return from_field(r, s, core);
}

ExactNumber ExactNumber::sqrt(const BigInt& n) { return surd(0, 1, 1, n); }

ExactNumber ExactNumber::from_field(const BigRational& r, const BigRational& s, const BigInt& d) {
    if (s.sign() == 0 || sgn(d) == 0) return ExactNumber(r);
    if (d == 1) return ExactNumber(r + s);
    const BigInt c = lcm(r.denominator(), s.denominator());
    const BigRational cq(c);
    return ExactNumber(QuadraticSurd((r * cq).numerator(), (s * cq).numerator(), c, d));
}

BigRational ExactNumber::rational_part() const {
    if (const auto* q = if_rational()) return *q;
    const auto& s = as_surd();
    return BigRational(s.a_, s.c_);
}

BigRational ExactNumber::sqrt_coefficient() const {
    if (is_rational()) return BigRational(0);
    const auto& s = as_surd();
    return BigRational(s.b_, s.c_);
}

const BigRational& ExactNumber::as_rational() const {
    if (const auto* q = if_rational()) return *q;
    throw Error(ErrorKind::NotIrrational, "expected a rational, got " + to_string());
}

const QuadraticSurd& ExactNumber::as_surd() const {
    if (const auto* s = if_surd()) return *s;
    throw Error(ErrorKind::NotIrrational, "expected a quadratic irrational, got " + to_string());
}

BigInt ExactNumber::radicand() const {
    if (const auto* s = if_surd()) return s->d_;
    return 0;
}

int ExactNumber::sign() const {
    if (const auto* q = if_rational()) return q->sign();
    const auto& s = as_surd();
    return surd_sign(s.a_, s.b_, s.d_);
}

ExactNumber ExactNumber::operator-() const {
    if (const auto* q = if_rational()) return ExactNumber(-*q);
    const auto& s = as_surd();
    return ExactNumber(QuadraticSurd(-s.a_, -s.b_, s.c_, s.d_));
}

ExactNumber ExactNumber::reciprocal() const { return ExactNumber(1) / *this; }

ExactNumber operator+(const ExactNumber& x, const ExactNumber& y) {
    if (x.is_rational() && y.is_rational()) return ExactNumber(x.as_rational() + y.as_rational());
    const Field fx = to_field(x);
    const Field fy = to_field(y);
    const BigInt d = common_radicand(fx, fy);
    return ExactNumber::from_field(fx.r + fy.r, fx.s + fy.s, d);
}

ExactNumber operator-(const ExactNumber& x, const ExactNumber& y) { return x + (-y); }

ExactNumber operator*(const ExactNumber& x, const ExactNumber& y) {
    if (x.is_rational() && y.is_rational()) return ExactNumber(x.as_rational() * y.as_rational());
    const Field fx = to_field(x);
    const Field fy = to_field(y);
    const BigInt d = common_radicand(fx, fy);
    const BigRational dq(d);
    return ExactNumber::from_field(fx.r * fy.r + fx.s * fy.s * dq, fx.r * fy.s + fx.s * fy.r, d);
}

ExactNumber operator/(const ExactNumber& x, const ExactNumber& y) {
    if (y.sign() == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
    if (x.is_rational() && y.is_rational()) return ExactNumber(x.as_rational() / y.as_rational());
    const Field fy = to_field(y);
    // 1/(r + s*sqrt(d)) = (r - s*sqrt(d)) / (r^2 - s^2 d)
    const BigRational norm = fy.r * fy.r - fy.s * fy.s * BigRational(fy.d);
    const ExactNumber inv = ExactNumber::from_field(fy.r / norm, -fy.s / norm, fy.d);
    return x * inv;
}

std::strong_ordering operator<=>(const ExactNumber& x, const ExactNumber& y) {
    return compare_exact(x, y);
}

std::string ExactNumber::to_string() const {
    if (const auto* q = if_rational()) return q->to_string();
    return as_surd().to_string();
}

std::string ExactNumber::to_decimal(int places) const {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const BigInt scaled = floor_exact(*this * ExactNumber(scale) + ExactNumber::rational(1, 2));
    const bool negative = sgn(scaled) < 0;
    std::string digits = BigInt(abs(scaled)).get_str();
    if (places > 0) {
        if (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
    }
    return negative ? "-" + digits : digits;
}

double ExactNumber::to_double() const {
    if (const auto* q = if_rational()) return q->raw().get_d();
    const auto& s = as_surd();
    return (s.a_.get_d() + s.b_.get_d() * std::sqrt(s.d_.get_d())) / s.c_.get_d();
}

// ---------------------------------------------------------------------------
// Floor and comparison

BigInt floor_exact(const ExactNumber& x) {
    if (const auto* q = x.if_rational()) return floor_div(q->numerator(), q->denominator());
    const auto& s = x.as_surd();
    // b*sqrt(D) is irrational, so floor(a + b*sqrt(D)) = a + floor(b*sqrt(D))
    // and the quotient by c > 0 floors through.
    const BigInt root = integer_sqrt(s.b() * s.b() * s.radicand());
    const BigInt fb = sgn(s.b()) > 0 ? root : BigInt(-root - 1);
    return floor_div(s.a() + fb, s.c());
}

BigInt ceil_exact(const ExactNumber& x) { return -floor_exact(-x); }

BigInt floor_difference(const ExactNumber& u, const ExactNumber& v) {
    const BigInt du = u.radicand();
    const BigInt dv = v.radicand();
    if (du == 0 || dv == 0 || du == dv) return floor_exact(u - v);
    // floor(u) - floor(v) - 1 < u - v < floor(u) - floor(v) + 1
    const BigInt g = floor_exact(u) - floor_exact(v) - 1;
    const bool above = compare_exact(u, v + ExactNumber(BigInt(g + 1))) != std::strong_ordering::less;
    return above ? BigInt(g + 1) : g;
}

std::strong_ordering compare_exact(const ExactNumber& x, const ExactNumber& y) {
    if (x.is_rational() && y.is_rational()) return x.as_rational() <=> y.as_rational();
    const Field fx = to_field(x);
    const Field fy = to_field(y);
    const bool same = fx.s.sign() == 0 || fy.s.sign() == 0 || fx.d == fy.d;
    if (same) {
        const BigInt d = fx.s.sign() != 0 ? fx.d : fy.d;
        return from_sign(field_sign(Field{fx.r - fy.r, fx.s - fy.s, d}));
    }
    // x - y = u - v with u = (rx - ry) + sx*sqrt(Dx) and v = sy*sqrt(Dy).
    const Field u{fx.r - fy.r, fx.s, fx.d};
    const int su = field_sign(u);
    const int sv = fy.s.sign();
    if (su != sv) return from_sign(su > sv ? 1 : -1);
    // Same nonzero sign: compare squares. u^2 lies in Q(sqrt(Dx)), v^2 in Q.
    const Field u2{u.r * u.r + u.s * u.s * BigRational(u.d), BigRational(2) * u.r * u.s, u.d};
    const BigRational v2 = fy.s * fy.s * BigRational(fy.d);
    const int diff = field_sign(Field{u2.r - v2, u2.s, u2.d});
    return from_sign(su * diff);
}

std::size_t ExactNumberHash::operator()(const ExactNumber& x) const noexcept {
    if (const auto* q = x.if_rational()) {
        return hash_value(q->raw().get_num()) * 31 + hash_value(q->raw().get_den());
    }
    const auto& s = *x.if_surd();
    std::size_t h = hash_value(s.a());
    h = h * 31 + hash_value(s.b());
    h = h * 31 + hash_value(s.c());
    return h * 31 + hash_value(s.radicand());
}

// ---------------------------------------------------------------------------
// Parsing

ExactNumber parse_exact(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    }
    static const std::regex rational_re(R"(^([+-]?\d+)(?:/(\d+))?$)");
    static const std::regex surd_re(
        R"(^(?:\(([+-]?\d+)?([+-])?(?:(\d+)\*)?sqrt\((\d+)\)\)(?:/(\d+))?|([+-])?(?:(\d+)\*)?sqrt\((\d+)\))$)");
    std::smatch m;
    if (std::regex_match(s, m, rational_re)) {
        const BigInt num(m[1].str());
        const BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
        if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
        return ExactNumber::rational(num, den);
    }
    if (std::regex_match(s, m, surd_re)) {
        if (m[4].matched) {
            const BigInt a = m[1].matched ? BigInt(m[1].str()) : BigInt(0);
            if (m[1].matched && !m[2].matched) {
                throw Error(ErrorKind::Parse, "missing sign before sqrt in '" + s + "'");
            }
            BigInt b = m[3].matched ? BigInt(m[3].str()) : BigInt(1);
            if (m[2].matched && m[2].str() == "-") b = -b;
            const BigInt c = m[5].matched ? BigInt(m[5].str()) : BigInt(1);
            if (c == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
            return ExactNumber::surd(a, b, c, BigInt(m[4].str()));
        }
        BigInt b = m[7].matched ? BigInt(m[7].str()) : BigInt(1);
        if (m[6].matched && m[6].str() == "-") b = -b;
        return ExactNumber::surd(0, b, 1, BigInt(m[8].str()));
    }
    throw Error(ErrorKind::Parse, "cannot parse exact number '" + std::string(text) +
                                      "' (expected p/q or (a+b*sqrt(D))/c)");
}

// ---------------------------------------------------------------------------
// Rational sampling

BigRational rational_between(const ExactNumber& lo, const ExactNumber& hi) {
    if (compare_exact(lo, hi) != std::strong_ordering::less) {
        throw Error(ErrorKind::EmptyInterval, "rational_between needs lo < hi");
    }
    BigInt q = 1;
    for (;;) {
        const BigInt m = floor_exact(lo * ExactNumber(q)) + 1;
        const ExactNumber candidate = ExactNumber::rational(m, q);
        if (compare_exact(candidate, hi) == std::strong_ordering::less) {
            return candidate.as_rational();
        }
        q *= 2;
    }
}

BigRational rational_midpoint(const ExactNumber& lo, const ExactNumber& hi) {
    if (compare_exact(lo, hi) != std::strong_ordering::less) {
        throw Error(ErrorKind::EmptyInterval, "rational_midpoint needs lo < hi");
    }
    if (lo.is_rational() && hi.is_rational()) {
        return (lo.as_rational() + hi.as_rational()) / BigRational(2);
    }
    // Start near the scale of the gap; the exact loop below still decides.
    BigInt q = 1;
    const double gap = hi.to_double() - lo.to_double();
    if (std::isfinite(gap) && gap > 0) {
        const int bits = static_cast<int>(std::ceil(std::log2(2.0 / gap)));
        if (bits > 0) q <<= static_cast<unsigned>(std::min(bits, 1000));
    }
    for (;;) {
        const BigInt up = ceil_exact(lo * ExactNumber(q));
        const BigInt down = floor_exact(hi * ExactNumber(q));
        if (up < down) return BigRational(up + down, 2 * q);
        q *= 2;
    }
}

// ---------------------------------------------------------------------------
// Quadratic equations

std::vector<ExactNumber> quadratic_roots(const BigInt& c2, const BigInt& c1, const BigInt& c0) {
    std::vector<ExactNumber> roots;
    if (sgn(c2) == 0) {
        if (sgn(c1) == 0) {
            throw Error(ErrorKind::DegenerateEquation, "no unknown left in equation");
        }
        roots.push_back(ExactNumber::rational(-c0, c1));
        return roots;
    }
    const BigInt disc = c1 * c1 - 4 * c2 * c0;
    if (sgn(disc) < 0) return roots;
    const int s = sgn(c2);
    roots.push_back(ExactNumber::surd(-c1, -s, 2 * c2, disc));
    if (sgn(disc) > 0) roots.push_back(ExactNumber::surd(-c1, s, 2 * c2, disc));
    return roots;
}

ExactNumber solve_quadratic_in_range(const BigInt& c2, const BigInt& c1, const BigInt& c0,
                                     const ExactNumber& lo, const ExactNumber& hi) {
    auto in_range = [&](const ExactNumber& x) {
        return compare_exact(lo, x) != std::strong_ordering::greater &&
               compare_exact(x, hi) != std::strong_ordering::greater;
    };
    std::vector<ExactNumber> roots = quadratic_roots(c2, c1, c0);
    std::vector<ExactNumber> hits;
    for (auto& r : roots) {
        if (in_range(r)) hits.push_back(std::move(r));
    }
    const std::string eq = c2.get_str() + "*x^2 + " + c1.get_str() + "*x + " + c0.get_str();
    if (hits.empty()) {
        throw Error(ErrorKind::NoRootInRange,
                    eq + " has no root in [" + lo.to_string() + ", " + hi.to_string() + "]");
    }
    if (hits.size() > 1) {
        throw Error(ErrorKind::AmbiguousRoot,
                    eq + " has two roots in [" + lo.to_string() + ", " + hi.to_string() + "]");
    }
    return hits.front();
}

}  // namespace nacf
