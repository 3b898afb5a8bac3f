#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wzeta/algebra.hpp"
#include "wzeta/congruence.hpp"

namespace wzeta {

// ---- primes ----------------------------------------------------------

bool is_prime(long n);

// Primes in [lo, hi] by sieve. Rejects lo > hi and hi beyond the guard
// (resource limit; raise it deliberately for big scans).
std::vector<long> primes_in_range(long lo, long hi, long guard = 100000);

// ---- multiple harmonic sums ------------------------------------------

// H_n(s) = sum over n >= n_1 > ... > n_k >= 1 of prod n_i^{-s_i}; H_n() = 1,
// and 0 whenever n < depth(s).
Rational mhs_exact(long n, const Composition& s);

// H_n extended linearly over a series (the constant term contributes itself).
Rational mhs_exact_linear(long n, const TruncatedSeries& a);

// The restricted sum over indices up to p*r that are coprime to p.
Rational mhs_restricted_exact(long p, int r, const Composition& s);

// An element of Z/p^exponent.
class PrimePowerResidue {
public:
    PrimePowerResidue(long prime, int exponent, Integer value);

    long prime() const { return prime_; }
    int exponent() const { return exponent_; }
    const Integer& value() const { return value_; }
    const Integer& modulus() const { return modulus_; }

    // min(v_p(value), exponent); a zero value reports the cap.
    int valuation() const;
    bool valuation_capped() const { return value_ == 0; }

    bool operator==(const PrimePowerResidue&) const = default;

private:
    long prime_;
    int exponent_;
    Integer modulus_;
    Integer value_;
};

// Modular evaluation of harmonic sums in Z/p^N. All indices are units, so
// this agrees with reducing the exact value. Requires n <= p-1.
PrimePowerResidue mhs_mod(long p, int N, long n, const Composition& s);

// Modular restricted sum (limit p*r, indices coprime to p).
PrimePowerResidue mhs_restricted_mod(long p, int N, int r, const Composition& s);

// Per-prime evaluation context sharing the suffix tables across calls.
class ModularHarmonicEvaluator {
public:
    ModularHarmonicEvaluator(long p, int N);

    long prime() const { return p_; }
    int exponent() const { return N_; }
    const Integer& modulus() const { return modulus_; }

    // H_n(s) mod p^N, n <= p-1.
    Integer mhs(long n, const Composition& s);
    // Restricted sum to `limit` with indices coprime to p; limit may exceed p.
    Integer mhs_restricted(long limit, const Composition& s);

    Integer reduce_rational(const Rational& r) const;  // throws if p divides the denominator
    Integer inverse(const Integer& x) const;

private:
    struct Table {
        std::vector<Integer> values;  // values[m] = H_m(s)
    };
    Table& table_for(const Composition& s, long limit, bool restricted);

    long p_;
    int N_;
    Integer modulus_;
    std::map<Composition, Table, GradedLess> full_;
    std::map<Composition, Table, GradedLess> restricted_;
};

// ---- Bernoulli numbers -------------------------------------------------

// B_k with B_1 = -1/2 (generating function x/(e^x - 1)).
const Rational& bernoulli(int k);

// ---- verification -------------------------------------------------------

struct PrimeRecord {
    enum class Status { Pass, Fail, Skip };
    long prime = 0;
    int valuation = 0;   // achieved valuation, capped; meaningless for Skip
    bool capped = false; // valuation hit the computation cap ("at least")
    Status status = Status::Skip;
    std::string reason;  // set for Skip
};

class VerificationReport {
public:
    VerificationReport(std::string title, int required_exponent, int cap);

    const std::string& title() const { return title_; }
    int required_exponent() const { return required_; }
    int cap() const { return cap_; }
    const std::vector<PrimeRecord>& records() const { return records_; }

    void add(PrimeRecord rec) { records_.push_back(std::move(rec)); }

    bool all_passed() const;  // no Fail records (Skips allowed)
    size_t failure_count() const;
    size_t skip_count() const;

    std::string table() const;
    nlohmann::json to_json() const;

private:
    std::string title_;
    int required_;
    int cap_;
    std::vector<PrimeRecord> records_;
};

struct VerifyOptions {
    int slack = 2;        // compute valuations up to required + slack
    unsigned jobs = 1;    // per-prime worker threads
    long prime_guard = 100000;
};

// Checks v_p(sum alpha_s p^{w(s)} H_{p-1}(s)) >= modulus exponent for each
// prime in [lo, hi]; primes dividing a coefficient denominator are skipped.
VerificationReport verify_congruence(const CongruenceStatement& c, long lo, long hi,
                                     const VerifyOptions& opt = {});

// Truncated reversal series: v_p(H(s) - (-1)^{w(s)} sum over r-vectors with
// |r| < n of prod C(s_j+r_j-1, r_j) p^{|r|} H(s_k+r_k,...,s_1+r_1)) >= n.
VerificationReport verify_reversal_series(const Composition& s, int n, long lo, long hi,
                                          const VerifyOptions& opt = {});

// v_p(sum_{m=1}^{N-1} (-1)^{m+1} p^m H_{p-1}({1}^m)) >= N. Holds for p >= 3.
VerificationReport verify_ones_alternating(int N, long lo, long hi,
                                           const VerifyOptions& opt = {});

// v_p(C(kp, rp) - C(k,r) sum_{m<N} (-k)^m p^m H^{(p)}_{rp}({1}^m)) >= N,
// for odd p. Requires k >= r >= 0.
VerificationReport verify_binomial_representation(long k, long r, int N, long lo, long hi,
                                                  const VerifyOptions& opt = {});

// Partial sum of the Bernoulli-harmonic series for p^k zeta_p(k), reduced at
// the exponent certified by the tail bound (k + terms - 2). For even k the
// true value is zero, so the partial sum must vanish at that exponent.
PrimePowerResidue padic_zeta_series(int k, long p, int terms);

int padic_zeta_certified_exponent(int k, int terms);

}  // namespace wzeta
