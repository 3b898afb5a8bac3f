#include "wzeta/harmonic.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wzeta {

// ---- primes ----------------------------------------------------------

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<long> primes_in_range(long lo, long hi, long guard) {
    if (lo > hi) throw std::invalid_argument("empty prime range");
    if (lo < 2) lo = 2;
    if (hi > guard)
        throw std::invalid_argument("prime range upper bound " + std::to_string(hi) +
                                    " exceeds guard " + std::to_string(guard));
    std::vector<bool> composite(static_cast<size_t>(hi) + 1, false);
    std::vector<long> out;
    for (long n = 2; n <= hi; ++n) {
        if (composite[static_cast<size_t>(n)]) continue;
        for (long m = n * n; m <= hi; m += n) composite[static_cast<size_t>(m)] = true;
        if (n >= lo) out.push_back(n);
    }
    return out;
}

// ---- exact sums --------------------------------------------------------

namespace {

// Prefix tables H_0(s), ..., H_limit(s) built by the suffix recurrence
// H_m(s) = H_{m-1}(s) + m^{-s_1} H_{m-1}(tail).
class ExactEvaluator {
public:
    explicit ExactEvaluator(long limit) : limit_(limit) {}

    const Rational& value(long n, const Composition& s) {
        if (n > limit_) throw std::invalid_argument("exact evaluator limit exceeded");
        return table(s)[static_cast<size_t>(n)];
    }

private:
    const std::vector<Rational>& table(const Composition& s) {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        std::vector<Rational> vals(static_cast<size_t>(limit_) + 1);
        if (s.empty()) {
            std::fill(vals.begin(), vals.end(), Rational(1));
        } else {
            int head = s.parts().front();
            Composition tail(std::vector<int>(s.parts().begin() + 1, s.parts().end()));
            const auto& tail_vals = table(tail);
            vals[0] = 0;
            for (long m = 1; m <= limit_; ++m) {
                Rational term = tail_vals[static_cast<size_t>(m - 1)];
                if (term != 0) {
                    Rational power(1, Integer(m));
                    // 1/m^head
                    Rational inv_m = power;
                    for (int e = 1; e < head; ++e) power *= inv_m;
                    term *= power;
                }
                vals[static_cast<size_t>(m)] = vals[static_cast<size_t>(m - 1)] + term;
            }
        }
        return memo_.emplace(s, std::move(vals)).first->second;
    }

    long limit_;
    std::map<Composition, std::vector<Rational>, GradedLess> memo_;
};

}  // namespace

Rational mhs_exact(long n, const Composition& s) {
    if (n < 0) throw std::invalid_argument("mhs_exact requires n >= 0");
    if (n < s.depth()) return 0;
    ExactEvaluator ev(n);
    return ev.value(n, s);
}

Rational mhs_exact_linear(long n, const TruncatedSeries& a) {
    ExactEvaluator ev(n);
    Rational out = 0;
    for (const auto& [s, c] : a.terms()) {
        if (n < s.depth()) continue;
        out += c * ev.value(n, s);
    }
    return out;
}

Rational mhs_restricted_exact(long p, int r, const Composition& s) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("p must be prime");
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    long limit = p * r;
    // same recurrence, skipping multiples of p
    std::map<Composition, std::vector<Rational>, GradedLess> memo;
    std::function<const std::vector<Rational>&(const Composition&)> table =
        [&](const Composition& c) -> const std::vector<Rational>& {
        auto it = memo.find(c);
        if (it != memo.end()) return it->second;
        std::vector<Rational> vals(static_cast<size_t>(limit) + 1);
        if (c.empty()) {
            std::fill(vals.begin(), vals.end(), Rational(1));
        } else {
            int head = c.parts().front();
            Composition tail(std::vector<int>(c.parts().begin() + 1, c.parts().end()));
            const auto& tail_vals = table(tail);
            vals[0] = 0;
            for (long m = 1; m <= limit; ++m) {
                vals[static_cast<size_t>(m)] = vals[static_cast<size_t>(m - 1)];
                if (m % p == 0) continue;
                Rational term = tail_vals[static_cast<size_t>(m - 1)];
                if (term != 0) {
                    Rational inv_m(1, Integer(m));
                    Rational power = inv_m;
                    for (int e = 1; e < head; ++e) power *= inv_m;
                    vals[static_cast<size_t>(m)] += term * power;
                }
            }
        }
        return memo.emplace(c, std::move(vals)).first->second;
    };
    return table(s)[static_cast<size_t>(limit)];
}

// ---- modular evaluation ---------------------------------------------------

PrimePowerResidue::PrimePowerResidue(long prime, int exponent, Integer value)
    : prime_(prime), exponent_(exponent), modulus_(pow_integer(Integer(prime), static_cast<unsigned long>(exponent))) {
    if (exponent < 1) throw std::invalid_argument("exponent must be >= 1");
    if (!is_prime(prime)) throw std::invalid_argument("modulus base must be prime");
    mpz_mod(value.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
    value_ = std::move(value);
}

int PrimePowerResidue::valuation() const {
    if (value_ == 0) return exponent_;
    return static_cast<int>(padic_valuation(value_, Integer(prime_)));
}

ModularHarmonicEvaluator::ModularHarmonicEvaluator(long p, int N)
    : p_(p), N_(N), modulus_(pow_integer(Integer(p), static_cast<unsigned long>(N))) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (N < 1) throw std::invalid_argument("exponent must be >= 1");
}

Integer ModularHarmonicEvaluator::inverse(const Integer& x) const {
    Integer out;
    if (mpz_invert(out.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t()) == 0)
        throw std::domain_error("not invertible mod p^N");
    return out;
}

Integer ModularHarmonicEvaluator::reduce_rational(const Rational& r) const {
    Integer num = r.get_num();
    Integer den = r.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p_)))
        throw std::domain_error("denominator divisible by p");
    Integer out = (num % modulus_) * inverse(den % modulus_);
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), modulus_.get_mpz_t());
    return out;
}

ModularHarmonicEvaluator::Table& ModularHarmonicEvaluator::table_for(const Composition& s,
                                                                     long limit, bool restricted) {
    auto& cache = restricted ? restricted_ : full_;
    auto it = cache.find(s);
    if (it == cache.end()) {
        Table t;
        t.values.reserve(static_cast<size_t>(limit) + 1);
        t.values.emplace_back(s.empty() ? 1 : 0);
        it = cache.emplace(s, std::move(t)).first;
    }
    Table& t = it->second;
    if (static_cast<long>(t.values.size()) > limit) return t;

    if (s.empty()) {
        while (static_cast<long>(t.values.size()) <= limit) t.values.emplace_back(1);
        return t;
    }
    int head = s.parts().front();
    Composition tail(std::vector<int>(s.parts().begin() + 1, s.parts().end()));
    Table& tail_t = table_for(tail, limit - 1, restricted);
    for (long m = static_cast<long>(t.values.size()); m <= limit; ++m) {
        Integer next = t.values.back();
        bool unit = (m % p_) != 0;
        if (!restricted && !unit)
            throw std::invalid_argument("harmonic sum index not invertible: n >= p");
        if (unit) {
            const Integer& prev_tail = tail_t.values[static_cast<size_t>(m - 1)];
            if (prev_tail != 0) {
                Integer inv_pow;
                mpz_powm_ui(inv_pow.get_mpz_t(), inverse(Integer(m)).get_mpz_t(),
                            static_cast<unsigned long>(head), modulus_.get_mpz_t());
                next += inv_pow * prev_tail;
                mpz_mod(next.get_mpz_t(), next.get_mpz_t(), modulus_.get_mpz_t());
            }
        }
        t.values.push_back(std::move(next));
    }
    return t;
}

Integer ModularHarmonicEvaluator::mhs(long n, const Composition& s) {
    if (n < 0) throw std::invalid_argument("mhs requires n >= 0");
    if (n > p_ - 1) throw std::invalid_argument("mhs_mod requires n <= p-1");
    return table_for(s, n, /*restricted=*/false).values[static_cast<size_t>(n)];
}

Integer ModularHarmonicEvaluator::mhs_restricted(long limit, const Composition& s) {
    if (limit < 0) throw std::invalid_argument("limit must be >= 0");
    return table_for(s, limit, /*restricted=*/true).values[static_cast<size_t>(limit)];
}

PrimePowerResidue mhs_mod(long p, int N, long n, const Composition& s) {
    ModularHarmonicEvaluator ev(p, N);
    return PrimePowerResidue(p, N, ev.mhs(n, s));
}

PrimePowerResidue mhs_restricted_mod(long p, int N, int r, const Composition& s) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    ModularHarmonicEvaluator ev(p, N);
    return PrimePowerResidue(p, N, ev.mhs_restricted(static_cast<long>(p) * r, s));
}

// ---- Bernoulli numbers --------------------------------------------------

const Rational& bernoulli(int k) {
    if (k < 0) throw std::invalid_argument("bernoulli requires k >= 0");
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    // sum_{j=0}^{m} C(m+1, j) B_j = [m == 0]
    while (static_cast<int>(cache.size()) <= k) {
        int m = static_cast<int>(cache.size());
        Rational acc = 0;
        for (int j = 0; j < m; ++j)
            acc += Rational(binomial(static_cast<unsigned long>(m + 1),
                                     static_cast<unsigned long>(j))) *
                   cache[static_cast<size_t>(j)];
        cache.push_back(-acc / Rational(m + 1));
    }
    return cache[static_cast<size_t>(k)];
}

// ---- reports -------------------------------------------------------------

VerificationReport::VerificationReport(std::string title, int required_exponent, int cap)
    : title_(std::move(title)), required_(required_exponent), cap_(cap) {}

bool VerificationReport::all_passed() const {
    return failure_count() == 0;
}

size_t VerificationReport::failure_count() const {
    return static_cast<size_t>(std::count_if(records_.begin(), records_.end(), [](const auto& r) {
        return r.status == PrimeRecord::Status::Fail;
    }));
}

size_t VerificationReport::skip_count() const {
    return static_cast<size_t>(std::count_if(records_.begin(), records_.end(), [](const auto& r) {
        return r.status == PrimeRecord::Status::Skip;
    }));
}

std::string VerificationReport::table() const {
    std::ostringstream os;
    os << title_ << "\nrequired p-adic valuation: " << required_ << " (cap " << cap_ << ")\n";
    os << "  prime  valuation  status\n";
    for (const auto& r : records_) {
        os << "  " << r.prime;
        for (size_t i = std::to_string(r.prime).size(); i < 5; ++i) os << ' ';
        if (r.status == PrimeRecord::Status::Skip) {
            os << "  -          skip    " << r.reason;
        } else {
            std::string v = (r.capped ? ">=" : "") + std::to_string(r.valuation);
            os << "  " << v;
            for (size_t i = v.size(); i < 9; ++i) os << ' ';
            os << (r.status == PrimeRecord::Status::Pass ? "  pass" : "  FAIL");
        }
        os << '\n';
    }
    os << (all_passed() ? "all passed" : "FAILURES: " + std::to_string(failure_count()));
    if (skip_count() > 0) os << " (skipped " << skip_count() << ")";
    os << '\n';
    return os.str();
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : records_) {
        nlohmann::json rec;
        rec["prime"] = r.prime;
        switch (r.status) {
            case PrimeRecord::Status::Pass: rec["status"] = "pass"; break;
            case PrimeRecord::Status::Fail: rec["status"] = "fail"; break;
            case PrimeRecord::Status::Skip: rec["status"] = "skip"; break;
        }
        if (r.status == PrimeRecord::Status::Skip) {
            rec["reason"] = r.reason;
        } else if (r.capped) {
            rec["valuation"] = ">=" + std::to_string(r.valuation);
        } else {
            rec["valuation"] = r.valuation;
        }
        records.push_back(std::move(rec));
    }
    return {{"statement", title_},
            {"required_exponent", required_},
            {"cap", cap_},
            {"records", std::move(records)},
            {"passed", all_passed()}};
}

// ---- verification drivers -------------------------------------------------

namespace {

PrimeRecord record_from_residue(long p, const Integer& value, int required, int cap) {
    PrimeRecord rec;
    rec.prime = p;
    if (value == 0) {
        rec.valuation = cap;
        rec.capped = true;
    } else {
        rec.valuation = static_cast<int>(padic_valuation(value, Integer(p)));
    }
    rec.status = rec.valuation >= required ? PrimeRecord::Status::Pass : PrimeRecord::Status::Fail;
    return rec;
}

// Runs `eval` over every prime in [lo, hi] with opt.jobs workers and collects
// records in prime order.
VerificationReport run_over_primes(std::string title, int required, int cap, long lo, long hi,
                                   const VerifyOptions& opt,
                                   const std::function<PrimeRecord(long)>& eval) {
    auto primes = primes_in_range(lo, hi, opt.prime_guard);
    std::vector<PrimeRecord> records(primes.size());
    size_t jobs = std::min<size_t>(std::max(1u, opt.jobs), std::max<size_t>(primes.size(), 1));
    if (jobs <= 1) {
        for (size_t i = 0; i < primes.size(); ++i) records[i] = eval(primes[i]);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= primes.size()) return;
                try {
                    records[i] = eval(primes[i]);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> threads;
        for (size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    VerificationReport report(std::move(title), required, cap);
    for (auto& r : records) report.add(std::move(r));
    return report;
}

}  // namespace

VerificationReport verify_congruence(const CongruenceStatement& c, long lo, long hi,
                                     const VerifyOptions& opt) {
    int n = c.modulus_exponent();
    int cap = n + opt.slack;
    auto eval = [&c, n, cap](long p) -> PrimeRecord {
        for (const auto& [s, coeff] : c.terms()) {
            if (mpz_divisible_ui_p(coeff.get_den().get_mpz_t(), static_cast<unsigned long>(p))) {
                PrimeRecord rec;
                rec.prime = p;
                rec.status = PrimeRecord::Status::Skip;
                rec.reason = "p divides the denominator of the coefficient of " + s.str();
                return rec;
            }
        }
        ModularHarmonicEvaluator ev(p, cap);
        Integer sum = 0;
        for (const auto& [s, coeff] : c.terms()) {
            if (s.weight() >= cap) continue;  // p^{w(s)} is 0 mod p^cap
            Integer term = ev.reduce_rational(coeff);
            term *= pow_integer(Integer(p), static_cast<unsigned long>(s.weight()));
            term *= ev.mhs(p - 1, s);
            sum += term;
            mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), ev.modulus().get_mpz_t());
        }
        return record_from_residue(p, sum, n, cap);
    };
    return run_over_primes(c.display_text(), n, cap, lo, hi, opt, eval);
}

VerificationReport verify_reversal_series(const Composition& s, int n, long lo, long hi,
                                          const VerifyOptions& opt) {
    if (n < 1) throw std::invalid_argument("truncation order must be >= 1");
    int cap = n + opt.slack;
    // all r-vectors with |r| <= n-1, with their binomial coefficients
    struct Term {
        Composition reversed_bumped;
        Integer coefficient;
        int shift;
    };
    std::vector<Term> terms;
    const auto& parts = s.parts();
    std::vector<int> bump(parts.size(), 0);
    auto rec = [&](auto&& self, size_t pos, int used, Integer coeff) -> void {
        if (pos == parts.size()) {
            std::vector<int> bumped(parts.size());
            for (size_t j = 0; j < parts.size(); ++j) bumped[j] = parts[j] + bump[j];
            std::reverse(bumped.begin(), bumped.end());
            terms.push_back({Composition(std::move(bumped)), std::move(coeff), used});
            return;
        }
        for (int b = 0; used + b < n; ++b) {
            bump[pos] = b;
            Integer c = coeff * binomial(static_cast<unsigned long>(parts[pos] + b - 1),
                                         static_cast<unsigned long>(b));
            self(self, pos + 1, used + b, std::move(c));
        }
        bump[pos] = 0;
    };
    rec(rec, 0, 0, Integer(1));

    bool negate = s.weight() % 2 != 0;
    auto eval = [&, n, cap](long p) -> PrimeRecord {
        ModularHarmonicEvaluator ev(p, cap);
        Integer sum = ev.mhs(p - 1, s);
        for (const auto& t : terms) {
            if (t.shift >= cap) continue;
            Integer term = t.coefficient * pow_integer(Integer(p), static_cast<unsigned long>(t.shift));
            term *= ev.mhs(p - 1, t.reversed_bumped);
            if (negate) {
                sum += term;  // subtracting (-1)^{w} series with w odd
            } else {
                sum -= term;
            }
            mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), ev.modulus().get_mpz_t());
        }
        return record_from_residue(p, sum, n, cap);
    };
    return run_over_primes("reversal series for " + s.str() + " at order " + std::to_string(n), n,
                           cap, lo, hi, opt, eval);
}

VerificationReport verify_ones_alternating(int N, long lo, long hi, const VerifyOptions& opt) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    int cap = N + opt.slack;
    auto eval = [N, cap](long p) -> PrimeRecord {
        ModularHarmonicEvaluator ev(p, cap);
        Integer sum = 0;
        for (int m = 1; m < N; ++m) {
            Composition ones(std::vector<int>(static_cast<size_t>(m), 1));
            Integer term = pow_integer(Integer(p), static_cast<unsigned long>(m)) * ev.mhs(p - 1, ones);
            if (m % 2 == 0) {
                sum -= term;
            } else {
                sum += term;
            }
            mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), ev.modulus().get_mpz_t());
        }
        return record_from_residue(p, sum, N, cap);
    };
    return run_over_primes("alternating sum of p^m H({1}^m) at order " + std::to_string(N), N, cap,
                           lo, hi, opt, eval);
}

VerificationReport verify_binomial_representation(long k, long r, int N, long lo, long hi,
                                                  const VerifyOptions& opt) {
    if (r < 0 || k < r) throw std::invalid_argument("requires k >= r >= 0");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    int cap = N + opt.slack;
    auto eval = [k, r, N, cap](long p) -> PrimeRecord {
        if (p == 2) {
            PrimeRecord rec;
            rec.prime = p;
            rec.status = PrimeRecord::Status::Skip;
            rec.reason = "identity requires an odd prime";
            return rec;
        }
        ModularHarmonicEvaluator ev(p, cap);
        Integer lhs;
        mpz_bin_uiui(lhs.get_mpz_t(), static_cast<unsigned long>(k * p),
                     static_cast<unsigned long>(r * p));
        Integer series = 0;
        for (int m = 0; m < N; ++m) {
            Composition ones(std::vector<int>(static_cast<size_t>(m), 1));
            Integer term = pow_integer(Integer(-k), static_cast<unsigned long>(m));
            term *= pow_integer(Integer(p), static_cast<unsigned long>(m));
            term *= ev.mhs_restricted(r * p, ones);
            series += term;
        }
        series *= binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(r));
        Integer diff = lhs - series;
        mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), ev.modulus().get_mpz_t());
        return record_from_residue(p, diff, N, cap);
    };
    return run_over_primes("binomial C(" + std::to_string(k) + "p, " + std::to_string(r) +
                               "p) vs harmonic series at order " + std::to_string(N),
                           N, cap, lo, hi, opt, eval);
}

int padic_zeta_certified_exponent(int k, int terms) {
    // First omitted index is s = k-1+terms; that term has valuation >= s-1
    // (the Bernoulli denominator is squarefree, so it costs at most one p).
    return k + terms - 2;
}

PrimePowerResidue padic_zeta_series(int k, long p, int terms) {
    if (k < 2) throw std::invalid_argument("zeta argument must be >= 2");
    if (terms < 1) throw std::invalid_argument("terms must be >= 1");
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("p must be a prime >= 5");
    if ((k - 1) % p == 0) throw std::invalid_argument("p divides k-1; valuation bookkeeping breaks");
    int cap = padic_zeta_certified_exponent(k, terms);
    ModularHarmonicEvaluator ev(p, cap);
    Integer sum = 0;
    for (int s = k - 1; s <= k - 2 + terms; ++s) {
        const Rational& b = bernoulli(s + 1 - k);
        if (mpz_divisible_ui_p(b.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
            throw std::invalid_argument("p divides the denominator of a Bernoulli coefficient");
        if (b == 0 || s >= cap) continue;
        Rational coeff = b * Rational(binomial(static_cast<unsigned long>(s - 1),
                                               static_cast<unsigned long>(k - 2)),
                                      Integer(k - 1));
        coeff.canonicalize();
        if ((s + k + 1) % 2 != 0) coeff = -coeff;
        Integer term = ev.reduce_rational(coeff);
        term *= pow_integer(Integer(p), static_cast<unsigned long>(s));
        term *= ev.mhs(p - 1, Composition{s});
        sum += term;
        mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), ev.modulus().get_mpz_t());
    }
    return PrimePowerResidue(p, cap, std::move(sum));
}

}  // namespace wzeta
