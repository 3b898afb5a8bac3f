#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wzeta/composition.hpp"
#include "wzeta/rational.hpp"

namespace wzeta {

// Word over the two-letter alphabet {X, Y}. Words representing elements of
// the z-basis algebra are empty or end in Y.
class BinaryWord {
public:
    enum class Letter : char { X = 'X', Y = 'Y' };

    BinaryWord() = default;
    explicit BinaryWord(std::string letters);  // string of 'X'/'Y'

    const std::string& letters() const { return letters_; }
    size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool ends_in_y() const { return !letters_.empty() && letters_.back() == 'Y'; }

    std::string str() const { return letters_; }
    bool operator==(const BinaryWord&) const = default;
    auto operator<=>(const BinaryWord&) const = default;

private:
    std::string letters_;
};

// z_s = X^{s-1}Y per part; length of the word equals the weight.
BinaryWord z_to_xy(const Composition& c);

// Inverse of z_to_xy. Throws if the word ends in X.
Composition xy_to_z(const BinaryWord& w);

// A finite rational linear combination of basis words z_s with weight below a
// fixed truncation degree. Sparse: no zero coefficients are stored.
class TruncatedSeries {
public:
    using TermMap = std::map<Composition, Rational, GradedLess>;

    explicit TruncatedSeries(int truncation);

    static TruncatedSeries zero(int truncation) { return TruncatedSeries(truncation); }
    static TruncatedSeries constant(const Rational& c, int truncation);
    static TruncatedSeries one(int truncation) { return constant(1, truncation); }
    static TruncatedSeries basis(const Composition& s, int truncation);

    int truncation() const { return truncation_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Composition& s) const;
    Rational constant_term() const { return coefficient(Composition{}); }

    // Adds c * z_s; terms of weight >= truncation are discarded, exact zeros erased.
    void add_term(const Composition& s, const Rational& c);

    // The same element viewed at a lower truncation degree.
    TruncatedSeries truncated(int m) const;

    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries& operator-=(const TruncatedSeries& o);
    TruncatedSeries& operator*=(const Rational& c);
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
    friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }

    bool operator==(const TruncatedSeries&) const = default;

    // "1 z[1] - 1/3 z[2,1]"; the constant term prints as a bare rational.
    std::string str() const;
    static TruncatedSeries parse(std::string_view text, int truncation);

    nlohmann::json to_json() const;
    static TruncatedSeries from_json(const nlohmann::json& j);

private:
    int truncation_;
    TermMap terms_;
};

// Harmonic (stuffle) product of two basis words; coefficients are positive
// integers and the result is homogeneous of weight w(a)+w(b). Memoized.
const std::map<Composition, Integer, GradedLess>& stuffle_words(const Composition& a,
                                                                const Composition& b);

// Bilinear stuffle product; result truncation is the min of the inputs'.
TruncatedSeries stuffle(const TruncatedSeries& a, const TruncatedSeries& b);

// Bilinear concatenation product: z_s . z_t is the basis word of the
// juxtaposed composition.
TruncatedSeries concat(const TruncatedSeries& a, const TruncatedSeries& b);

// 1/(1+y) = sum_{j<n} (-1)^j z_{(1,...,1)} at truncation n.
TruncatedSeries geometric_inverse_one_plus_y(int truncation);

}  // namespace wzeta
