#include "nacf/orbits.hpp"

#include <json.hpp>

#include <numeric>
#include <unordered_map>

namespace nacf {

namespace {

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

void require_domain(const ExactNumber& x, const Params& p) {
    if (!p.in_domain(x)) {
        throw Error(ErrorKind::OutOfDomain,
                    x.to_string() + " is outside [alpha, alpha+1] for alpha = " + p.alpha().to_string());
    }
}

}  // namespace

QuadCoeffs QuadCoeffs::normalized() const {
    QuadCoeffs q = *this;
    const BigInt g = gcd(gcd(a, b), c);
    if (g > 1) {
        q.a /= g;
        q.b /= g;
        q.c /= g;
    }
    if (sgn(q.a) < 0) {
        q.a = -q.a;
        q.b = -q.b;
        q.c = -q.c;
        q.root_sign = -q.root_sign;
    }
    return q;
}

bool OrbitTrace::reaches_one() const {
    const ExactNumber one(1);
    for (const auto& x : states) {
        if (x == one) return true;
    }
    return false;
}

std::string OrbitTrace::summary() const {
    if (periodic()) {
        return "Periodic pre=" + std::to_string(pre_period) + " period=" + std::to_string(period);
    }
    return "NoPeriodWithinBudget steps=" + std::to_string(digits.size());
}

OrbitTrace orbit_rational(const BigRational& x, const Params& p, std::size_t budget) {
    const ExactNumber x0(x);
    require_domain(x0, p);
    OrbitTrace tr;
    tr.n = p.n();
    std::unordered_map<ExactNumber, std::size_t, ExactNumberHash> seen;
    ExactNumber cur = x0;
    RawPair raw{x.numerator(), x.denominator()};
    const BigInt big_n = big(p.n());
    for (std::size_t k = 0;; ++k) {
        tr.states.push_back(cur);
        tr.raw.push_back(raw);
        auto [it, fresh] = seen.emplace(cur, k);
        if (!fresh) {
            tr.verdict = Verdict::Periodic;
            tr.pre_period = it->second;
            tr.period = k - it->second;
            break;
        }
        if (k == budget) break;
        auto s = step(cur, p);
        tr.digits.push_back(s.digit);
        raw = RawPair{big_n * raw.s - big(s.digit) * raw.t, raw.t};
        cur = std::move(s.next);
        if (cur != ExactNumber::rational(raw.t, raw.s)) {
            throw Error(ErrorKind::InvariantViolation, "raw state " + raw.t.get_str() + "/" +
                                                           raw.s.get_str() + " drifted from " +
                                                           cur.to_string());
        }
    }
    return tr;
}

QuadCoeffs minimal_coeffs(const QuadraticSurd& x) {
    // (c x - a)^2 = b^2 D
    QuadCoeffs q{x.c() * x.c(), -2 * x.a() * x.c(), x.a() * x.a() - x.b() * x.b() * x.radicand(),
                 sgn(x.b())};
    return q.normalized();
}

ExactNumber coeff_root(const QuadCoeffs& q, const BigInt& squarefree_d) {
    const BigInt disc = q.discriminant();
    if (sgn(disc) <= 0 || !mpz_divisible_p(disc.get_mpz_t(), squarefree_d.get_mpz_t())) {
        throw Error(ErrorKind::InvariantViolation, "discriminant " + disc.get_str() +
                                                       " is not in Q(sqrt(" + squarefree_d.get_str() + "))");
    }
    const BigInt f2 = disc / squarefree_d;
    const BigInt f = integer_sqrt(f2);
    if (f * f != f2) {
        throw Error(ErrorKind::InvariantViolation, "discriminant " + disc.get_str() +
                                                       " is not a square multiple of " +
                                                       squarefree_d.get_str());
    }
    const BigRational two_a(BigInt(2 * q.a));
    return ExactNumber::from_field(BigRational(BigInt(-q.b)) / two_a,
                                   BigRational(BigInt(q.root_sign * f)) / two_a,
                                   squarefree_d);
}

OrbitTrace orbit_quadratic(const ExactNumber& x0, const Params& p, std::size_t budget) {
    if (x0.is_rational()) {
        throw Error(ErrorKind::NotIrrational, x0.to_string() + " is rational");
    }
    require_domain(x0, p);
    const BigInt field = x0.radicand();
    const BigInt big_n = big(p.n());
    OrbitTrace tr;
    tr.n = p.n();
    std::unordered_map<ExactNumber, std::size_t, ExactNumberHash> seen;
    ExactNumber cur = x0;
    QuadCoeffs q = minimal_coeffs(x0.as_surd());
    const BigInt disc0 = q.discriminant();
    BigInt scale = 1;  // N^{2k}
    for (std::size_t k = 0;; ++k) {
        if (coeff_root(q, field) != cur) {
            throw Error(ErrorKind::InvariantViolation, "coefficient root disagrees with " +
                                                           cur.to_string() + " at step " +
                                                           std::to_string(k));
        }
        if (q.discriminant() != scale * disc0) {
            throw Error(ErrorKind::InvariantViolation,
                        "discriminant law fails at step " + std::to_string(k));
        }
        tr.states.push_back(cur);
        tr.coeffs.push_back(q);
        auto [it, fresh] = seen.emplace(cur, k);
        if (!fresh) {
            tr.verdict = Verdict::Periodic;
            tr.pre_period = it->second;
            tr.period = k - it->second;
            break;
        }
        if (k == budget) break;
        auto s = step(cur, p);
        tr.digits.push_back(s.digit);
        const BigInt d = big(s.digit);
        q = QuadCoeffs{q.c, big_n * q.b + 2 * d * q.c,
                       big_n * big_n * q.a + big_n * q.b * d + q.c * d * d, -q.root_sign};
        scale *= big_n * big_n;
        cur = std::move(s.next);
    }
    return tr;
}

bool discriminant_check(const OrbitTrace& trace) {
    if (trace.coeffs.empty()) return false;
    const BigInt disc0 = trace.coeffs.front().discriminant();
    const BigInt n2 = big(trace.n) * big(trace.n);
    BigInt scale = 1;
    for (const auto& q : trace.coeffs) {
        if (q.discriminant() != scale * disc0) return false;
        scale *= n2;
    }
    return true;
}

bool reaches_one(const BigRational& x, const Params& p, std::size_t budget) {
    const OrbitTrace tr = orbit_rational(x, p, budget);
    const ExactNumber one(1);
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        if (tr.states[k] != one) continue;
        for (std::size_t j = k; j < tr.digits.size(); ++j) {
            if (tr.digits[j] != p.n() - 1) {
                throw Error(ErrorKind::InvariantViolation, "orbit left 1 or read a digit other than N-1");
            }
        }
        return true;
    }
    return false;
}

DivisibilityReport divisibility_diagnostics(const OrbitTrace& trace) {
    if (trace.raw.empty()) {
        throw Error(ErrorKind::PrerequisiteNotMet, "divisibility diagnostics need a rational trace");
    }
    const BigInt big_n = big(trace.n);
    DivisibilityReport rep;
    for (std::size_t k = 0; k < trace.raw.size(); ++k) {
        const auto& [t, s] = trace.raw[k];
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), big_n.get_mpz_t());
        rep.residues.push_back(r);
        if (sgn(r) == 0) rep.n_divides_some_t = true;

        BigInt g = gcd(t, s);
        for (BigInt h = gcd(g, big_n); h > 1; h = gcd(g, big_n)) g /= h;
        if (g > 1 && !rep.foreign_common_factor) {
            rep.foreign_common_factor = true;
            rep.first_foreign_step = k;
        }
        if (k + 1 < trace.raw.size()) {
            const BigInt& t_next = trace.raw[k + 1].t;
            if (t_next <= t) rep.t_strictly_increasing = false;
            const BigInt lhs = t_next + big(trace.digits[k]) * t;
            if (!mpz_divisible_p(lhs.get_mpz_t(), big_n.get_mpz_t())) rep.residue_law = false;
        }
    }
    return rep;
}

NonPeriodicityCertificate nonperiodicity_certificate(const ExactNumber& x0, const Params& p) {
    if (!p.in_domain(x0)) return {CertificateKind::NotCertified, "x0 outside [alpha, alpha+1]"};
    if (!in_coprime_region(p)) return {CertificateKind::NotCertified, "(N, alpha) not in K"};
    if (x0.is_rational()) {
        if (compare_exact(p.alpha(), ExactNumber(1)) != std::strong_ordering::greater) {
            return {CertificateKind::NotCertified, "alpha <= 1"};
        }
        return {CertificateKind::CertifiedNonPeriodic, "rational-in-K"};
    }
    if (p.n() % 2 == 0) return {CertificateKind::NotCertified, "N even"};
    const QuadCoeffs q = minimal_coeffs(x0.as_surd());
    if (gcd(q.c, big(p.n())) != 1) return {CertificateKind::NotCertified, "gcd(C0, N) > 1"};
    return {CertificateKind::CertifiedNonPeriodic, "quadratic-in-K"};
}

std::string trace_json_lines(const OrbitTrace& trace) {
    std::string out;
    for (std::size_t k = 0; k < trace.states.size(); ++k) {
        nlohmann::ordered_json rec;
        rec["n"] = k;
        if (k < trace.digits.size()) {
            rec["digit"] = trace.digits[k];
        } else {
            rec["digit"] = nullptr;
        }
        if (!trace.raw.empty()) {
            rec["value"] = trace.states[k].to_string();
            rec["t"] = trace.raw[k].t.get_str();
            rec["s"] = trace.raw[k].s.get_str();
        } else {
            rec["value"] = trace.states[k].to_string();
            rec["A"] = trace.coeffs[k].a.get_str();
            rec["B"] = trace.coeffs[k].b.get_str();
            rec["C"] = trace.coeffs[k].c.get_str();
        }
        out += rec.dump();
        out += '\n';
    }
    return out;
}

}  // namespace nacf
