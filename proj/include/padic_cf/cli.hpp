#pragma once

// Command-line front end. Needs the vendored CLI11.hpp and json.hpp on the
// include path (link padic_cf_vendor).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "browkin.hpp"
#include "digits.hpp"
#include "exact_arith.hpp"
#include "schneider.hpp"

namespace padic_cf::cli {

using json = nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification = 1;
inline constexpr int exit_usage = 2;

/// Accepts optional '-', digits, optional '/' digits. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
    auto digits_only = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num_text = body.substr(0, slash);
    std::string_view den_text = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits_only(num_text) || !digits_only(den_text))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    BigInt num{std::string(num_text)};
    BigInt den{std::string(den_text)};
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (negative) num = -num;
    return Rational(num, den);
}

/// Six significant digits, so that dumps are short and stable.
inline double round6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::strtod(buf, nullptr);
}

// --- rendering ---------------------------------------------------------------

struct BrowkinResult {
    BrowkinExpansion expansion;
    BoundReport bound;
    bool reconstructed = false;
};

/// Expands and re-checks against exact back-substitution and the length bound.
inline BrowkinResult browkin_checked(const Rational& r, OddPrime p, std::optional<std::size_t> max_steps = std::nullopt) {
    auto e = browkin_expand(r, p, max_steps);
    auto bound = browkin_bound(e.beta0, e.beta1_abs(), p);
    const bool reconstructed = cf_evaluate(e.quotients()) == r;
    return {std::move(e), std::move(bound), reconstructed};
}

inline json browkin_json(const BrowkinResult& res) {
    const auto& e = res.expansion;
    json quotients = json::array(), ks = json::array(), betas = json::array();
    for (const auto& s : e.steps) {
        quotients.push_back({{"num", s.a.num().str()}, {"den", s.a.den().str()}});
        ks.push_back(s.k);
        betas.push_back(s.beta.str());
    }
    return {{"p", e.p.value()},           {"input", e.input.to_string()}, {"quotients", quotients},
            {"k", ks},                    {"beta", betas},                {"bound_N", res.bound.n_bound},
            {"reconstructed", res.reconstructed}};
}

inline std::string browkin_text(const BrowkinResult& res) {
    const auto& e = res.expansion;
    std::ostringstream os;
    os << "Browkin expansion of " << e.input << " at p = " << e.p.value() << "\n";
    os << "n\tk\tbeta\ta_n\n";
    for (std::size_t i = 0; i < e.steps.size(); ++i)
        os << i << '\t' << e.steps[i].k << '\t' << e.steps[i].beta << '\t' << e.steps[i].a << '\n';
    os << "length " << e.steps.size() << ", bound N = " << res.bound.n_bound << " (|beta_0| = " << e.beta0
       << ", |beta_1| = " << e.beta1_abs() << ")\n";
    os << "reconstructed: " << (res.reconstructed ? "yes" : "NO") << '\n';
    return os.str();
}

struct SchneiderResult {
    SchneiderExpansion expansion;
    bool reconstructed = false;
};

inline SchneiderResult schneider_checked(const Rational& r, OddPrime p, std::size_t max_steps = 10'000) {
    SchneiderResult res{schneider_expand(r.num(), r.den(), p, max_steps), false};
    const auto head = res.expansion.head();
    res.reconstructed = schneider_evaluate(head, res.expansion.tail_value(), p) == r;
    return res;
}

inline json schneider_json(const SchneiderExpansion& e) {
    json head = json::array();
    for (const auto& d : e.head()) head.push_back({{"b", d.b}, {"alpha", d.alpha}});
    return {{"p", e.p.value()},
            {"a", e.a.str()},
            {"b", e.b.str()},
            {"head", head},
            {"stationary_from", e.stationary_from ? json(*e.stationary_from) : json(nullptr)},
            {"finite_end", e.finite_end}};
}

inline std::string schneider_text(const SchneiderResult& res) {
    const auto& e = res.expansion;
    std::ostringstream os;
    os << "Schneider expansion of " << e.a << "/" << e.b << " at p = " << e.p.value() << "\n";
    os << "m\tb_m\talpha_m\ty_m+1\n";
    for (std::size_t i = 0; i < e.steps.size(); ++i)
        os << i << '\t' << e.steps[i].b << '\t' << e.steps[i].alpha << '\t' << e.steps[i].y_next << '\n';
    if (e.stationary_from)
        os << "stationary from m = " << *e.stationary_from << ": (" << e.p.value() - 1 << ", 1) repeated\n";
    else
        os << "finite, terminal value " << e.tail_value() << '\n';
    os << "reconstructed: " << (res.reconstructed ? "yes" : "NO") << '\n';
    return os.str();
}

/// "-2*5^-2 +2*5^-1 -2 -2*5 +1*5^2", zero digits omitted.
inline std::string digits_text(const PAdicDigits& d) {
    std::string out;
    const std::string p = std::to_string(d.p.value());
    for (std::size_t i = 0; i < d.digits.size(); ++i) {
        const std::int64_t digit = d.digits[i];
        if (digit == 0) continue;
        const std::int64_t e = d.start_exponent + static_cast<std::int64_t>(i);
        if (!out.empty()) out += digit < 0 ? " -" : " +";
        else if (digit < 0) out += "-";
        out += std::to_string(digit < 0 ? -digit : digit);
        if (e == 1) out += "*" + p;
        else if (e != 0) out += "*" + p + "^" + std::to_string(e);
    }
    return out.empty() ? "0" : out;
}

inline json digits_json(const Rational& r, const PAdicDigits& d, const std::optional<DigitCycle>& cycle) {
    json out{{"p", d.p.value()},
             {"input", r.to_string()},
             {"start_exponent", d.start_exponent},
             {"digits", d.digits},
             {"precision", d.precision()}};
    if (cycle) out["cycle"] = {{"preperiod", cycle->preperiod}, {"period", cycle->period}, {"digits", cycle->cycle}};
    return out;
}

inline json bound_json(const BoundReport& b, OddPrime p, const BigInt& beta0, const BigInt& beta1) {
    return {{"p", p.value()},
            {"beta0_abs", beta0.str()},
            {"beta1_abs", beta1.str()},
            {"lambda1", b.lambda1.to_string()},
            {"lambda2", b.lambda2.to_string()},
            {"lambda1_float", round6(b.lambda1_float)},
            {"lambda2_float", round6(b.lambda2_float)},
            {"capacity_float", round6(b.capacity_float)},
            {"bound_N", b.n_bound},
            {"exact_certificate", b.exact_certificate}};
}

inline std::string bound_text(const BoundReport& b, const BigInt& beta0, const BigInt& beta1) {
    std::ostringstream os;
    os << "|beta_0| = " << beta0 << ", |beta_1| = " << beta1 << '\n';
    os << "lambda1 = " << b.lambda1 << " ~ " << b.lambda1_float << '\n';
    os << "lambda2 = " << b.lambda2 << " ~ " << b.lambda2_float << '\n';
    os << "C ~ " << b.capacity_float << '\n';
    os << "N = " << b.n_bound << (b.exact_certificate ? " (exact and float agree)" : " (float route disagrees)") << '\n';
    return os.str();
}

inline json head_json(const HeadReport& h) {
    return {{"T1_float", round6(h.T1_float)},
            {"T2_float", round6(h.T2_float)},
            {"theta_float", round6(h.theta_float)},
            {"exact_exponent", h.exact_exponent ? json(*h.exact_exponent) : json(nullptr)},
            {"head_len", h.head_len},
            {"exact_identity", h.exact_identity}};
}

inline std::string head_text(const HeadReport& h) {
    std::ostringstream os;
    os << "head digit (" << h.lambda << ", " << h.alpha << ")\n";
    os << "T1 = " << h.T1 << " ~ " << h.T1_float << '\n';
    os << "T2 = " << h.T2 << " ~ " << h.T2_float << '\n';
    os << "theta = " << h.theta << " ~ " << h.theta_float << '\n';
    os << "log|theta| / log|T2/T1| ~ " << h.exponent_float << '\n';
    if (h.exact_exponent)
        os << "(T2/T1)^" << *h.exact_exponent << " == theta exactly, head length " << h.head_len << '\n';
    else
        os << "no exact exponent, estimated head length " << h.head_len << '\n';
    return os.str();
}

/// Stable dump; parse + dump of the result reproduces it byte for byte.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- sweep -------------------------------------------------------------------

struct SweepOptions {
    std::vector<std::int64_t> primes;
    std::int64_t max_num = 0;
    std::int64_t max_den = 0;
    unsigned threads = 0;  ///< 0: hardware concurrency
};

struct SweepRow {
    std::int64_t p = 0;
    BigInt a, b;
    std::size_t browkin_len = 0;
    std::int64_t bound_N = 0;
    BigInt beta0_abs, beta1_abs;
    std::int64_t slack = 0;  ///< bound_N + 1 - browkin_len
    std::optional<std::size_t> schneider_steps_to_stationary;
    bool reconstructed = false;
};

struct SweepSummary {
    std::size_t rows = 0;
    std::size_t max_browkin_len = 0;
    std::int64_t min_slack = 0;
    std::optional<std::size_t> max_schneider_steps;
};

inline constexpr std::string_view sweep_csv_header =
    "p,a,b,browkin_len,bound_N,beta0_abs,beta1_abs,slack,schneider_steps_to_stationary";

inline SweepRow sweep_row(OddPrime p, const BigInt& a, const BigInt& b) {
    const Rational r(a, b);
    const auto res = browkin_checked(r, p);
    SweepRow row;
    row.p = p.value();
    row.a = a;
    row.b = b;
    row.browkin_len = res.expansion.steps.size();
    row.bound_N = res.bound.n_bound;
    row.beta0_abs = res.expansion.beta0;
    row.beta1_abs = res.expansion.beta1_abs();
    row.slack = row.bound_N + 1 - static_cast<std::int64_t>(row.browkin_len);
    row.reconstructed = res.reconstructed;
    if (a % p.big() != 0 && b % p.big() != 0) {
        const auto s = schneider_checked(r, p);
        row.reconstructed = row.reconstructed && s.reconstructed;
        if (s.expansion.stationary_from) row.schneider_steps_to_stationary = *s.expansion.stationary_from;
    }
    return row;
}

/// Rows ordered by (p, b, a). Throws theorem_violation if any row has negative
/// slack or fails to reconstruct; nothing is returned in that case.
inline std::vector<SweepRow> sweep_rows(const SweepOptions& opt) {
    if (opt.primes.empty()) throw std::invalid_argument("sweep needs at least one prime");
    if (opt.max_num < 1 || opt.max_den < 1) throw std::invalid_argument("sweep ranges must be >= 1");
    struct Input {
        OddPrime p;
        std::int64_t a, b;
    };
    std::vector<Input> inputs;
    auto primes = opt.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::int64_t pv : primes) {
        const OddPrime p(pv);
        for (std::int64_t b = 1; b <= opt.max_den; ++b)
            for (std::int64_t a = -opt.max_num; a <= opt.max_num; ++a)
                if (a != 0 && std::gcd(a, b) == 1) inputs.push_back({p, a, b});
    }

    std::vector<SweepRow> rows(inputs.size());
    std::vector<std::exception_ptr> errors(inputs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < inputs.size();) {
            try {
                rows[i] = sweep_row(inputs[i].p, inputs[i].a, inputs[i].b);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n_threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(1, inputs.size())));
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        const auto& row = rows[i];
        const std::string where = row.a.str() + "/" + row.b.str() + " at p = " + std::to_string(row.p);
        if (row.slack < 0)
            throw theorem_violation("bound violated: " + where + " has length " + std::to_string(row.browkin_len) +
                                    " > N + 1 = " + std::to_string(row.bound_N + 1));
        if (!row.reconstructed) throw theorem_violation("oracle mismatch: " + where + " does not reconstruct");
    }
    return rows;
}

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
    SweepSummary s;
    s.rows = rows.size();
    if (!rows.empty()) s.min_slack = rows.front().slack;
    for (const auto& r : rows) {
        s.max_browkin_len = std::max(s.max_browkin_len, r.browkin_len);
        s.min_slack = std::min(s.min_slack, r.slack);
        if (r.schneider_steps_to_stationary)
            s.max_schneider_steps = std::max(s.max_schneider_steps.value_or(0), *r.schneider_steps_to_stationary);
    }
    return s;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << sweep_csv_header << '\n';
    for (const auto& r : rows) {
        out << r.p << ',' << r.a << ',' << r.b << ',' << r.browkin_len << ',' << r.bound_N << ',' << r.beta0_abs << ','
            << r.beta1_abs << ',' << r.slack << ',';
        if (r.schneider_steps_to_stationary) out << *r.schneider_steps_to_stationary;
        out << '\n';
    }
}

inline std::string summary_text(const SweepSummary& s) {
    std::ostringstream os;
    os << "rows " << s.rows << ", max browkin_len " << s.max_browkin_len << ", min slack " << s.min_slack
       << ", max schneider steps ";
    if (s.max_schneider_steps) os << *s.max_schneider_steps;
    else os << "-";
    os << '\n';
    return os.str();
}

/// Writes the CSV to `csv`; throws std::ios_base::failure if the sink fails.
inline SweepSummary sweep(const SweepOptions& opt, std::ostream& csv) {
    const auto rows = sweep_rows(opt);
    write_sweep_csv(rows, csv);
    csv.flush();
    if (!csv) throw std::ios_base::failure("failed writing sweep output");
    return summarize(rows);
}

// --- verify ------------------------------------------------------------------

/// Every check for one input; returns false if any failed. Lines go to `out`.
inline bool verify_all(const Rational& r, OddPrime p, std::ostream& out) {
    bool ok = true;
    auto report = [&](const std::string& what, bool good, const std::string& detail) {
        out << (good ? "ok   " : "FAIL ") << what << ": " << detail << '\n';
        ok = ok && good;
    };

    const auto res = browkin_checked(r, p);
    const auto& e = res.expansion;
    report("browkin reconstruction", res.reconstructed, std::to_string(e.steps.size()) + " quotients");
    report("browkin length bound", e.steps.size() <= static_cast<std::size_t>(res.bound.n_bound + 1),
           "length " + std::to_string(e.steps.size()) + " <= N + 1 = " + std::to_string(res.bound.n_bound + 1));
    report("bound certificate", res.bound.exact_certificate,
           "exact N " + std::to_string(res.bound.n_bound) + ", float N " + std::to_string(res.bound.n_bound_float));
    if (e.steps.size() >= 2) {
        const auto theta = theta_sequence(e.beta0, e.beta1_abs(), p, e.steps.size());
        bool dominated = true;
        for (std::size_t i = 0; i < e.steps.size(); ++i)
            dominated = dominated && Rational(BigInt(boost::multiprecision::abs(e.steps[i].beta))) <= theta[i];
        report("beta majorant", dominated, "|beta_n| <= theta_n");
    }
    const auto conv = browkin_convergents(e);
    bool det_ok = true;
    for (std::size_t n = 1; n < conv.size(); ++n)
        det_ok = det_ok && conv[n].pn * conv[n - 1].qn - conv[n - 1].pn * conv[n].qn == Rational(n % 2 == 1 ? 1 : -1);
    report("convergent determinants", det_ok, "p_n q_n-1 - p_n-1 q_n = (-1)^(n+1)");

    const auto digits = padic_digits(r, p, 16);
    const Rational diff = r - digits.value();
    report("digit truncation", diff.is_zero() || vp(diff, p) >= digits.precision(),
           "16 digits from p^" + std::to_string(digits.start_exponent));

    if (r.num() % p.big() == 0 || r.den() % p.big() == 0) {
        out << "skip schneider: p divides numerator or denominator\n";
    } else {
        const auto s = schneider_checked(r, p);
        std::string detail = std::to_string(s.expansion.steps.size()) + " head quotients, ";
        detail += s.expansion.stationary_from ? "stationary" : "finite";
        report("schneider reconstruction", s.reconstructed, detail);
    }
    return ok;
}

// --- dispatch ----------------------------------------------------------------

/// Parses argv and runs one subcommand. Returns 0, 1 (verification failure)
/// or 2 (usage error).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact p-adic continued fractions of rationals", "padic-cf"};
    app.require_subcommand(1);

    std::int64_t p = 0;
    std::string rational_text;
    bool as_json = false;
    std::optional<std::size_t> max_steps;
    std::size_t count = 0;
    bool with_cycle = false;
    std::optional<std::string> beta0_text, beta1_text;
    std::optional<std::int64_t> lambda, alpha;
    SweepOptions sweep_opt;
    std::string out_path;

    auto add_p = [&](CLI::App* sub) { sub->add_option("-p,--prime", p, "odd prime")->required(); };
    auto add_rational = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("rational", rational_text, "a or a/b; put negative values after --");
        if (required) o->required();
    };

    auto* browkin_cmd = app.add_subcommand("expand-browkin", "Browkin expansion with its length bound");
    add_p(browkin_cmd);
    add_rational(browkin_cmd, true);
    browkin_cmd->add_option("--max-steps", max_steps, "step cap (default from the bound)");
    browkin_cmd->add_flag("--json", as_json);

    auto* schneider_cmd = app.add_subcommand("expand-schneider", "Schneider expansion up to stationarity");
    add_p(schneider_cmd);
    add_rational(schneider_cmd, true);
    schneider_cmd->add_option("--max-steps", max_steps, "step budget (default 10000)");
    schneider_cmd->add_flag("--json", as_json);

    auto* digits_cmd = app.add_subcommand("digits", "Symmetric p-adic digits");
    add_p(digits_cmd);
    add_rational(digits_cmd, true);
    digits_cmd->add_option("-n,--count", count, "number of digits")->required()->check(CLI::PositiveNumber);
    digits_cmd->add_flag("--cycle", with_cycle, "also report the repeating tail");
    digits_cmd->add_flag("--json", as_json);

    auto* bound_cmd = app.add_subcommand("bound", "Length bound from |beta_0|, |beta_1| or from a rational");
    add_p(bound_cmd);
    add_rational(bound_cmd, false);
    auto* b0 = bound_cmd->add_option("--beta0", beta0_text, "|beta_0| >= 1");
    auto* b1 = bound_cmd->add_option("--beta1", beta1_text, "|beta_1| >= 0");
    b0->needs(b1);
    b1->needs(b0);
    bound_cmd->add_flag("--json", as_json);

    auto* head_cmd = app.add_subcommand("head", "Constant Schneider head length");
    add_p(head_cmd);
    add_rational(head_cmd, true);
    auto* lo = head_cmd->add_option("--lambda", lambda, "head digit (default: first digit)");
    auto* ao = head_cmd->add_option("--alpha", alpha, "head exponent (default: first exponent)");
    lo->needs(ao);
    ao->needs(lo);
    head_cmd->add_flag("--json", as_json);

    auto* verify_cmd = app.add_subcommand("verify", "Run every exact check on one input");
    add_p(verify_cmd);
    add_rational(verify_cmd, true);

    auto* sweep_cmd = app.add_subcommand("sweep", "Bound tightness over all a/b in a box");
    sweep_cmd->add_option("--primes", sweep_opt.primes, "comma separated")->required()->delimiter(',');
    sweep_cmd->add_option("--max-num", sweep_opt.max_num, "|a| <= max-num")->required();
    sweep_cmd->add_option("--max-den", sweep_opt.max_den, "1 <= b <= max-den")->required();
    sweep_cmd->add_option("--out", out_path, "CSV file (default stdout)");
    sweep_cmd->add_option("--threads", sweep_opt.threads, "worker threads (default all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        auto* sub = app.get_subcommands().front();
        if (sub == sweep_cmd) {
            std::optional<std::ofstream> file;
            if (!out_path.empty()) {
                file.emplace(out_path);
                if (!*file) {
                    err << "error: cannot open " << out_path << " for writing\n";
                    return exit_verification;
                }
            }
            std::ostream& csv = file ? static_cast<std::ostream&>(*file) : out;
            const auto summary = sweep(sweep_opt, csv);
            (file ? out : err) << summary_text(summary);
            return exit_ok;
        }

        const OddPrime prime(p);
        const std::optional<Rational> r =
            rational_text.empty() ? std::nullopt : std::optional<Rational>(parse_rational(rational_text));
        auto nonzero = [&]() -> const Rational& {
            if (r->is_zero()) throw std::invalid_argument("the rational must be nonzero");
            return *r;
        };

        if (sub == browkin_cmd) {
            const auto res = browkin_checked(nonzero(), prime, max_steps);
            out << (as_json ? dump(browkin_json(res)) : browkin_text(res));
            const auto len = res.expansion.steps.size();
            if (!res.reconstructed) throw theorem_violation("oracle mismatch: quotients do not reconstruct the input");
            if (len > static_cast<std::size_t>(res.bound.n_bound + 1))
                throw theorem_violation("bound violated: length " + std::to_string(len) + " > N + 1");
            return exit_ok;
        }
        if (sub == schneider_cmd) {
            const auto res = schneider_checked(nonzero(), prime, max_steps.value_or(10'000));
            out << (as_json ? dump(schneider_json(res.expansion)) : schneider_text(res));
            if (!res.reconstructed) throw theorem_violation("oracle mismatch: Schneider digits do not reconstruct the input");
            return exit_ok;
        }
        if (sub == digits_cmd) {
            const auto d = padic_digits(*r, prime, count);
            std::optional<DigitCycle> cycle;
            if (with_cycle) cycle = find_digit_cycle(*r, prime);
            if (as_json) {
                out << dump(digits_json(*r, d, cycle));
            } else {
                out << digits_text(d) << '\n';
                if (cycle) {
                    out << "preperiod " << cycle->preperiod << ", period " << cycle->period << ", cycle";
                    for (auto c : cycle->cycle) out << ' ' << c;
                    out << '\n';
                }
            }
            const Rational diff = *r - d.value();
            if (!diff.is_zero() && vp(diff, prime) < d.precision())
                throw theorem_violation("oracle mismatch: truncated digits are not congruent to the input");
            return exit_ok;
        }
        if (sub == bound_cmd) {
            BigInt beta0, beta1;
            if (beta0_text) {
                if (r) throw std::invalid_argument("give either --beta0/--beta1 or a rational, not both");
                beta0 = parse_rational(*beta0_text).num();
                beta1 = parse_rational(*beta1_text).num();
                if (!parse_rational(*beta0_text).is_integer() || !parse_rational(*beta1_text).is_integer())
                    throw std::invalid_argument("--beta0 and --beta1 must be integers");
            } else if (r) {
                const auto e = browkin_expand(nonzero(), prime);
                beta0 = e.beta0;
                beta1 = e.beta1_abs();
            } else {
                throw std::invalid_argument("bound needs --beta0/--beta1 or a rational");
            }
            const auto b = browkin_bound(beta0, beta1, prime);
            out << (as_json ? dump(bound_json(b, prime, beta0, beta1)) : bound_text(b, beta0, beta1));
            if (!b.exact_certificate) {
                err << "note: float estimate " << b.n_bound_float << " differs from the exact N " << b.n_bound << '\n';
            }
            return exit_ok;
        }
        if (sub == head_cmd) {
            const Rational& q = nonzero();
            std::optional<SchneiderExpansion> e;
            if (q.num() % prime.big() != 0 && q.den() % prime.big() != 0) e = schneider_expand(q.num(), q.den(), prime);
            if (!lambda) {
                if (!e || e->steps.empty()) throw std::invalid_argument("no head digit to analyse; pass --lambda and --alpha");
                lambda = e->steps.front().b;
                alpha = e->steps.front().alpha;
            }
            const auto h = head_analysis(q.num(), q.den(), *lambda, *alpha, prime);
            out << (as_json ? dump(head_json(h)) : head_text(h));
            if (h.exact_identity && e) {
                // The identity pins a/b to a constant head of exactly head_len digits.
                const SchneiderDigit d{*lambda, *alpha};
                const auto head = e->head();
                const bool constant = std::all_of(head.begin(), head.end(), [&](const auto& x) { return x == d; });
                if (!constant || static_cast<std::int64_t>(head.size()) != h.head_len)
                    throw theorem_violation("oracle mismatch: expansion head disagrees with head length " +
                                            std::to_string(h.head_len));
            }
            return exit_ok;
        }
        if (sub == verify_cmd) {
            return verify_all(nonzero(), prime, out) ? exit_ok : exit_verification;
        }
    } catch (const theorem_violation& e) {
        err << "verification failure: " << e.what() << '\n';
        return exit_verification;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_verification;
    }
    return exit_usage;
}

}  // namespace padic_cf::cli
