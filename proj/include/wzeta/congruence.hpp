#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "wzeta/algebra.hpp"

namespace wzeta {

// A weighted congruence: sum over compositions s of weight < n of
// alpha_s p^{w(s)} H_{p-1}(s), asserted to vanish mod p^n for all large p.
// The constant term is always zero (the weighted zeta map sends 1 to 1).
class CongruenceStatement {
public:
    using TermMap = std::map<Composition, Rational, GradedLess>;

    explicit CongruenceStatement(int modulus_exponent);
    CongruenceStatement(int modulus_exponent, TermMap terms);

    int modulus_exponent() const { return modulus_exponent_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Composition& s, const Rational& c);

    // Smallest weight appearing, used to divide out a common power of p for
    // display. Zero statements report 0.
    int min_weight() const;

    // "p H(1) + 1/3 p^3 H(2,1) ... == 0 mod p^7"
    std::string normalized_text() const;
    // Same statement divided by p^{min_weight}: "H(1) + 1/3 p^2 H(2,1) ... == 0 mod p^6"
    std::string display_text() const;

    nlohmann::json to_json() const;
    static CongruenceStatement from_json(const nlohmann::json& j);

    bool operator==(const CongruenceStatement&) const = default;

private:
    int modulus_exponent_;
    TermMap terms_;
};

}  // namespace wzeta
