#include "nacf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "nacf/matching.hpp"
#include "nacf/orbits.hpp"
#include "nacf/paramspace.hpp"

namespace nacf::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Config {
    std::size_t budget = kDefaultBudget;
    Format format = Format::Text;
    int precision = 6;
    std::string alpha_min = "1/100";
    unsigned jobs = 1;
};

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw Error(ErrorKind::Parse, "unknown format '" + s + "' (json|csv|text)");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long n = std::stoll(v, &pos);
        if (pos != v.size() || n < 0) throw std::invalid_argument(v);
        return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, key + ": expected a non-negative integer, got '" + v + "'");
    }
}

void load_config(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "budget") {
            cfg.budget = parse_count(key, value);
        } else if (key == "format") {
            cfg.format = parse_format(value);
        } else if (key == "precision") {
            cfg.precision = static_cast<int>(parse_count(key, value));
        } else if (key == "alpha_min") {
            cfg.alpha_min = value;
        } else if (key == "jobs") {
            cfg.jobs = static_cast<unsigned>(parse_count(key, value));
        } else {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
}

void check_config(const Config& cfg) {
    if (cfg.budget < 1) throw Error(ErrorKind::Parse, "budget must be at least 1");
    if (cfg.precision < 1 || cfg.precision > 200) throw Error(ErrorKind::Parse, "precision must be in [1, 200]");
    if (cfg.jobs < 1) throw Error(ErrorKind::Parse, "jobs must be at least 1");
}

BigRational parse_rational(const std::string& text, const std::string& what) {
    const ExactNumber x = parse_exact(text);
    if (!x.is_rational()) throw Error(ErrorKind::Parse, what + " must be rational, got '" + text + "'");
    return x.as_rational();
}

std::vector<std::int64_t> parse_k_range(const std::string& text) {
    std::vector<std::int64_t> ks;
    auto num = [&](const std::string& s) -> std::int64_t {
        return static_cast<std::int64_t>(parse_count("--k", trim(s)));
    };
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            ks.push_back(num(part));
            continue;
        }
        const std::int64_t a = num(part.substr(0, dots));
        const std::int64_t b = num(part.substr(dots + 2));
        if (b < a) throw Error(ErrorKind::Parse, "empty range '" + part + "'");
        for (std::int64_t k = a; k <= b; ++k) ks.push_back(k);
    }
    if (ks.empty()) throw Error(ErrorKind::Parse, "no k values in '" + text + "'");
    return ks;
}

std::vector<Digit> parse_digits(const std::string& text) {
    std::vector<Digit> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const std::size_t d = parse_count("--digits", trim(part));
        if (d < 1) throw Error(ErrorKind::Parse, "digits must be positive");
        out.push_back(static_cast<Digit>(d));
    }
    if (out.empty()) throw Error(ErrorKind::Parse, "empty digit list");
    return out;
}

std::string with_decimal(const ExactNumber& x, int precision) {
    if (x.is_rational() && x.as_rational().is_integer()) return x.to_string();
    return x.to_string() + " ~ " + x.to_decimal(precision);
}

Json interval_json(const ParamInterval& iv, int precision) {
    Json j;
    j["lo"] = iv.lo.to_string();
    j["hi"] = iv.hi.to_string();
    j["lo_open"] = iv.lo_open;
    j["hi_open"] = iv.hi_open;
    j["lo_decimal"] = iv.lo.to_decimal(precision);
    j["hi_decimal"] = iv.hi.to_decimal(precision);
    return j;
}

std::string interval_text(const ParamInterval& iv, int precision) {
    return std::string(iv.lo_open ? "(" : "[") + iv.lo.to_string() + ", " + iv.hi.to_string() +
           (iv.hi_open ? ")" : "]") + "  ~ " + (iv.lo_open ? "(" : "[") + iv.lo.to_decimal(precision) +
           ", " + iv.hi.to_decimal(precision) + (iv.hi_open ? ")" : "]");
}

Json certificate_json(const BadRationalCertificate& c) {
    Json j;
    j["kind"] = "bad-rational-mod2";
    j["n"] = c.n;
    j["alpha"] = c.alpha.to_string();
    j["alpha_expansion"] = c.alpha_word.to_string();
    j["alpha_plus_one_expansion"] = c.alpha1_word.to_string();
    j["RM_1"] = c.rm.to_string();
    j["M_4"] = c.m.to_string();
    j["M_4_half"] = c.m_hat.to_string();
    j["expansions_ok"] = c.expansions_ok;
    j["matrices_ok"] = c.matrices_ok;
    j["residues_ok"] = c.residues_ok;
    j["scan_limit"] = c.scan_limit;
    j["scan_equivalence"] = c.scan_hit ? Json(std::to_string(c.scan_hit->k) + "," + std::to_string(c.scan_hit->l))
                                       : Json(nullptr);
    j["valid"] = c.valid;
    return j;
}

/// 1/2^n with n >= 3, or nullopt.
std::optional<int> bad_family_index(const BigRational& alpha) {
    if (alpha.numerator() != 1) return std::nullopt;
    const BigInt den = alpha.denominator();
    if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
    const int n = static_cast<int>(mpz_scan1(den.get_mpz_t(), 0));
    if (n < 3) return std::nullopt;
    return n;
}

struct Ctx {
    Config cfg;
    std::ostream& out;
};

// ---------------------------------------------------------------------------

int cmd_expand(Ctx& c, const std::string& xs, std::int64_t n, const std::string& as, std::size_t count,
               bool periodic) {
    const ExactNumber x = parse_exact(xs);
    const Params p(n, parse_exact(as));
    const DigitWord w = periodic ? expansion_word(x, p, c.cfg.budget) : expand(x, p, count);
    if (c.cfg.format == Format::Json) {
        Json j;
        j["x"] = x.to_string();
        j["N"] = n;
        j["alpha"] = p.alpha().to_string();
        j["prefix"] = w.prefix;
        j["period"] = w.period;
        j["word"] = w.to_string();
        c.out << j.dump() << "\n";
    } else {
        c.out << w.to_string() << "\n";
    }
    return kOk;
}

int cmd_orbit(Ctx& c, const std::string& xs, std::int64_t n, const std::string& as, bool quadratic,
              bool trace, bool certify) {
    const ExactNumber x = parse_exact(xs);
    const Params p(n, parse_exact(as));
    if (!quadratic && !x.is_rational()) {
        throw Error(ErrorKind::Parse, "surd input needs --quadratic");
    }
    const OrbitTrace tr = quadratic ? orbit_quadratic(x, p, c.cfg.budget) : orbit_rational(x.as_rational(), p, c.cfg.budget);
    if (trace || c.cfg.format == Format::Json) c.out << trace_json_lines(tr);
    std::optional<NonPeriodicityCertificate> cert;
    if (certify) cert = nonperiodicity_certificate(x, p);
    if (c.cfg.format == Format::Json) {
        Json j;
        j["verdict"] = tr.periodic() ? "Periodic" : "NoPeriodWithinBudget";
        j["steps"] = tr.digits.size();
        if (tr.periodic()) {
            j["pre_period"] = tr.pre_period;
            j["period"] = tr.period;
            j["first_repeat"] = tr.first_repeat();
        }
        j["reaches_one"] = tr.reaches_one();
        if (quadratic) j["discriminant_law"] = discriminant_check(tr);
        if (cert) {
            j["certificate"] = cert->kind == CertificateKind::CertifiedNonPeriodic ? "CertifiedNonPeriodic" : "NotCertified";
            j["certificate_reason"] = cert->reason;
        }
        c.out << j.dump() << "\n";
    } else {
        c.out << tr.summary() << "\n";
        if (tr.periodic()) c.out << "first_repeat=" << tr.first_repeat() << "\n";
        if (quadratic) c.out << "discriminant_law=" << (discriminant_check(tr) ? "ok" : "FAILED") << "\n";
        if (cert) {
            c.out << (cert->kind == CertificateKind::CertifiedNonPeriodic ? "CertifiedNonPeriodic" : "NotCertified")
                  << " (" << cert->reason << ")\n";
        }
    }
    return kOk;
}

int cmd_match(Ctx& c, const std::string& as, std::int64_t n, std::size_t max_exponent) {
    const BigRational alpha = parse_rational(as, "alpha");
    const int prec = c.cfg.precision;
    Json j;
    j["alpha"] = alpha.to_string();
    j["N"] = n;
    Json certs = Json::array();
    std::ostringstream text;
    int code = kOk;

    const auto point = detect_matching(alpha, n, c.cfg.budget);
    if (!point) {
        const Obstruction ob = no_matching_obstruction(alpha, n);
        j["match"] = "NoMatchWithinBudget";
        j["budget"] = c.cfg.budget;
        Json oc;
        oc["kind"] = "no-matching-obstruction";
        oc["verdict"] = std::string(to_string(ob));
        certs.push_back(oc);
        text << "NoMatchWithinBudget (budget " << c.cfg.budget << ")\n";
        text << "obstruction: " << to_string(ob) << "\n";
        if (ob == Obstruction::ObstructionHolds) code = kCertifiedNegative;
    } else {
        j["point_K"] = point->k;
        j["point_L"] = point->l;
        j["matched_value"] = point->matched_value.to_string();
        text << "point matching (K,L) = (" << point->k << "," << point->l << ") at "
             << with_decimal(point->matched_value, prec) << ", " << to_string(point->stable) << "\n";
        if (n == 2) {
            try {
                const MatchingInterval mi = matching_interval(alpha, n, max_exponent);
                j["K"] = mi.k;
                j["L"] = mi.l;
                j["index"] = static_cast<std::int64_t>(mi.k) - static_cast<std::int64_t>(mi.l);
                j["stable"] = "Stable";
                j["RM"] = mi.rm.to_string();
                j["M"] = mi.m.to_string();
                j["interval"] = interval_json(mi.interval, prec);
                text << "stable (" << mi.k << "," << mi.l << "), index " << (static_cast<std::int64_t>(mi.k) - static_cast<std::int64_t>(mi.l)) << "\n";
                text << "RM_K = " << mi.rm.to_string() << ", M_L = " << mi.m.to_string() << "\n";
                text << "interval " << interval_text(mi.interval, prec) << "\n";
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::BadRational) throw;
                j["stable"] = "Unstable";
                j["bad_rational_candidate"] = true;
                text << "no stable matching with K, L <= " << max_exponent << " (bad rational candidate)\n";
                if (auto idx = bad_family_index(alpha)) {
                    const auto cert = bad_rational_certificate(*idx);
                    certs.push_back(certificate_json(cert));
                    text << cert.text();
                }
                code = kCertifiedNegative;
            }
        } else {
            j["K"] = point->k;
            j["L"] = point->l;
            j["index"] = point->index;
            j["stable"] = std::string(to_string(point->stable));
        }
    }
    j["certificates"] = certs;
    if (c.cfg.format == Format::Json) {
        c.out << j.dump() << "\n";
    } else {
        c.out << text.str();
    }
    return code;
}

int cmd_interval(Ctx& c, const std::string& kind, const std::string& digits, std::int64_t n) {
    CylinderKind k;
    if (kind == "alpha") {
        k = CylinderKind::Alpha;
    } else if (kind == "alpha+1" || kind == "alpha_plus_one") {
        k = CylinderKind::AlphaPlusOne;
    } else {
        throw Error(ErrorKind::Parse, "--kind must be alpha or alpha+1");
    }
    const auto ds = parse_digits(digits);
    const ParamInterval iv = cylinder_interval(k, ds, n);
    if (c.cfg.format == Format::Json) {
        Json j;
        j["kind"] = kind;
        j["digits"] = ds;
        j["N"] = n;
        j["interval"] = interval_json(iv, c.cfg.precision);
        c.out << j.dump() << "\n";
    } else {
        c.out << interval_text(iv, c.cfg.precision) << "\n";
    }
    return kOk;
}

int cmd_badrat(Ctx& c, int n, std::size_t scan) {
    const auto cert = bad_rational_certificate(n, scan);
    if (c.cfg.format == Format::Json) {
        c.out << certificate_json(cert).dump() << "\n";
    } else {
        c.out << cert.text();
    }
    return cert.valid ? kOk : kInvariant;
}

int cmd_kset(Ctx& c, std::optional<std::int64_t> single, std::int64_t n_max) {
    const ExactNumber amin = parse_exact(c.cfg.alpha_min);
    std::vector<KsetRow> rows;
    if (single) {
        for (auto& cell : kset(*single, amin)) rows.push_back({*single, std::move(cell)});
    } else {
        rows = kset_plot_rows(n_max, amin, c.cfg.jobs);
    }
    if (c.cfg.format == Format::Json) {
        c.out << kset_json(rows, c.cfg.precision);
    } else {
        c.out << kset_csv(rows, c.cfg.precision);
    }
    return kOk;
}

int cmd_nomatch(Ctx& c, std::int64_t n) {
    const auto regions = no_matching_regions(n);
    if (c.cfg.format == Format::Json) {
        Json arr = Json::array();
        for (const auto& r : regions) arr.push_back(interval_json(r, c.cfg.precision));
        Json j;
        j["N"] = n;
        j["regions"] = arr;
        c.out << j.dump() << "\n";
    } else {
        for (const auto& r : regions) c.out << interval_text(r, c.cfg.precision) << "\n";
    }
    return kOk;
}

int cmd_verify(Ctx& c, bool table, const std::string& family, const std::string& krange) {
    const auto ks = parse_k_range(krange);
    std::vector<Family> fams;
    if (family == "all") {
        fams = {Family::I, Family::II, Family::III, Family::IV};
    } else {
        fams = {parse_family(family)};
    }
    std::size_t total = 0, passed = 0;
    Json arr = Json::array();
    for (Family f : fams) {
        const VerifyReport rep = verify_theorem_intervals(f, ks, table, c.cfg.jobs);
        total += rep.checks.size();
        passed += rep.passed();
        for (const auto& m : rep.checks) {
            if (c.cfg.format == Format::Json) {
                Json j;
                j["family"] = std::string(to_string(f));
                j["k"] = m.k;
                j["pass"] = m.pass;
                if (!m.pass) j["mismatch"] = m.mismatch;
                if (m.interval) j["interval"] = interval_json(*m.interval, c.cfg.precision);
                arr.push_back(j);
            } else {
                c.out << "family " << to_string(f) << " k=" << m.k << ": " << (m.pass ? "pass" : "FAIL");
                if (!m.pass) c.out << " (" << m.mismatch << ")";
                c.out << "\n";
            }
        }
    }
    if (c.cfg.format == Format::Json) {
        Json j;
        j["mode"] = table ? "table" : "theorem";
        j["results"] = arr;
        j["passed"] = passed;
        j["total"] = total;
        c.out << j.dump() << "\n";
    } else {
        c.out << passed << "/" << total << " pass\n";
    }
    return passed == total ? kOk : kInvariant;
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse:
            return kParse;
        case ErrorKind::BadRational:
            return kCertifiedNegative;
        case ErrorKind::InvariantViolation:
        case ErrorKind::MismatchDetected:
            return kInvariant;
        default:
            return kDomain;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact (N, alpha)-continued fractions: expansions, orbits, matching"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, format, alpha_min;
    std::size_t budget = 0, jobs = 0;
    int precision = 0;
    auto* o_config = app.add_option("--config", config_path, "key=value config file");
    auto* o_format = app.add_option("--format", format, "json|csv|text");
    auto* o_precision = app.add_option("--precision", precision, "decimal places for display");
    auto* o_budget = app.add_option("--budget", budget, "step budget");
    auto* o_amin = app.add_option("--alpha-min", alpha_min, "left edge of the parameter window");
    auto* o_jobs = app.add_option("--jobs", jobs, "worker threads for verify and kset");

    std::string x, alpha, kind, digits, family = "all", krange = "0..10";
    std::int64_t n = 0, n_max = 30;
    std::size_t count = 10, max_exponent = 40, scan = 30;
    int bad_n = 3;
    bool quadratic = false, trace = false, certify = false, periodic = false, table = false, theorem = false;

    auto* expand = app.add_subcommand("expand", "digits of x");
    expand->add_option("--x", x, "point")->required();
    expand->add_option("--N", n, "numerator N")->required();
    expand->add_option("--alpha", alpha, "parameter")->required();
    expand->add_option("--n", count, "number of digits");
    expand->add_flag("--periodic", periodic, "detect the period (uses --budget)");

    auto* orbit = app.add_subcommand("orbit", "exact orbit with cycle detection");
    orbit->add_option("--x", x, "start point")->required();
    orbit->add_option("--N", n, "numerator N")->required();
    orbit->add_option("--alpha", alpha, "parameter")->required();
    orbit->add_flag("--quadratic", quadratic, "x is a quadratic surd");
    orbit->add_flag("--trace", trace, "print the JSON-lines trace in text mode");
    orbit->add_flag("--certify", certify, "also report the non-periodicity certificate");

    auto* match = app.add_subcommand("match", "matching exponents and matching interval");
    match->add_option("--alpha", alpha, "rational parameter")->required();
    match->add_option("--N", n, "numerator N")->required();
    match->add_option("--max-exponent", max_exponent, "bound on K, L for the stable scan");

    auto* interval = app.add_subcommand("interval", "cylinder set of a digit prefix");
    interval->add_option("--kind", kind, "alpha or alpha+1")->required();
    interval->add_option("--digits", digits, "comma separated digits")->required();
    interval->add_option("--N", n, "numerator N")->required();

    auto* badrat = app.add_subcommand("badrat", "mod-2 certificate for alpha = 1/2^n");
    badrat->add_option("--n", bad_n, "exponent n >= 3")->required();
    badrat->add_option("--scan", scan, "exhaustive scan bound on K, L");

    auto* ks = app.add_subcommand("kset", "digit-set cells and the region K");
    auto* o_single = ks->add_option("--N", n, "single N");
    ks->add_option("--N-max", n_max, "all N from 2 to N-max");

    auto* nomatch = app.add_subcommand("nomatch-regions", "regions without matching intervals (odd N)");
    nomatch->add_option("--N", n, "odd N >= 5")->required();

    auto* verify = app.add_subcommand("verify", "recompute the matching families");
    verify->add_flag("--table", table, "expansions and matrices only");
    verify->add_flag("--theorem", theorem, "full check including intervals (default)");
    verify->add_option("--family", family, "i|ii|iii|iv|all");
    verify->add_option("--k", krange, "k values, e.g. 0..10 or 0,2,5");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kParse;
    }

    try {
        Config cfg;
        if (o_config->count() == 0) {
            if (const char* env = std::getenv("NACF_CONFIG"); env && *env) config_path = env;
        }
        if (!config_path.empty()) load_config(config_path, cfg);
        if (o_format->count()) cfg.format = parse_format(format);
        if (o_precision->count()) cfg.precision = precision;
        if (o_budget->count()) cfg.budget = budget;
        if (o_amin->count()) cfg.alpha_min = alpha_min;
        if (o_jobs->count()) cfg.jobs = static_cast<unsigned>(jobs);
        check_config(cfg);
        Ctx ctx{cfg, out};

        if (*expand) return cmd_expand(ctx, x, n, alpha, count, periodic);
        if (*orbit) return cmd_orbit(ctx, x, n, alpha, quadratic, trace, certify);
        if (*match) return cmd_match(ctx, alpha, n, max_exponent);
        if (*interval) return cmd_interval(ctx, kind, digits, n);
        if (*badrat) return cmd_badrat(ctx, bad_n, scan);
        if (*ks) return cmd_kset(ctx, o_single->count() ? std::optional<std::int64_t>(n) : std::nullopt, n_max);
        if (*nomatch) return cmd_nomatch(ctx, n);
        if (*verify) {
            if (table && theorem) throw Error(ErrorKind::Parse, "--table and --theorem are exclusive");
            return cmd_verify(ctx, table, family, krange);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInvariant;
    }
    return kParse;
}

}  // namespace nacf::cli
