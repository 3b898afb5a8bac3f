#include "wzeta/algebra.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace wzeta {

Rational rational_from_string(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) throw std::invalid_argument("empty rational");
    try {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            den = -den;
            num = -num;
        }
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + std::string(text));
    }
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

long padic_valuation(const Integer& x, const Integer& p) {
    if (x == 0) throw std::domain_error("valuation of zero");
    Integer tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long padic_valuation(const Rational& r, const Integer& p) {
    if (r == 0) throw std::domain_error("valuation of zero");
    return padic_valuation(Integer(r.get_num()), p) - padic_valuation(Integer(r.get_den()), p);
}

Integer pow_integer(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

BinaryWord::BinaryWord(std::string letters) : letters_(std::move(letters)) {
    for (char c : letters_)
        if (c != 'X' && c != 'Y') throw std::invalid_argument("binary word letters must be X or Y");
}

BinaryWord z_to_xy(const Composition& c) {
    std::string w;
    w.reserve(static_cast<size_t>(c.weight()));
    for (int part : c.parts()) {
        w.append(static_cast<size_t>(part - 1), 'X');
        w.push_back('Y');
    }
    return BinaryWord(std::move(w));
}

Composition xy_to_z(const BinaryWord& w) {
    if (!w.empty() && !w.ends_in_y())
        throw std::invalid_argument("word ends in X, not a z-basis word: " + w.str());
    std::vector<int> parts;
    int run = 0;
    for (char c : w.letters()) {
        if (c == 'X') {
            ++run;
        } else {
            parts.push_back(run + 1);
            run = 0;
        }
    }
    return Composition(std::move(parts));
}

TruncatedSeries::TruncatedSeries(int truncation) : truncation_(truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int truncation) {
    TruncatedSeries s(truncation);
    s.add_term(Composition{}, c);
    return s;
}

TruncatedSeries TruncatedSeries::basis(const Composition& s, int truncation) {
    TruncatedSeries out(truncation);
    out.add_term(s, 1);
    return out;
}

Rational TruncatedSeries::coefficient(const Composition& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const Composition& s, const Rational& c) {
    if (s.weight() >= truncation_ || c == 0) return;
    auto [it, inserted] = terms_.emplace(s, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

TruncatedSeries TruncatedSeries::truncated(int m) const {
    if (m > truncation_) throw std::invalid_argument("cannot raise a truncation degree");
    TruncatedSeries out(m);
    for (const auto& [s, c] : terms_) out.add_term(s, c);
    return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
    if (o.truncation_ < truncation_) *this = truncated(o.truncation_);
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [s, v] : terms_) v *= c;
    return *this;
}

std::string TruncatedSeries::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        out += rational_to_string(a);
        if (!s.empty()) {
            out += " z";
            out += s.str();
        }
    }
    return out;
}

namespace {

struct SeriesParser {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("series parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() const { return text[pos]; }

    Rational parse_rational() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (pos == start) fail("expected a rational number");
        try {
            return rational_from_string(text.substr(start, pos - start));
        } catch (const std::invalid_argument& e) {
            pos = start;
            fail(e.what());
        }
    }

    Composition parse_word() {
        skip_ws();
        if (pos >= text.size() || (text[pos] != 'z' && text[pos] != 'Z')) fail("expected 'z['");
        ++pos;
        skip_ws();
        if (pos >= text.size() || text[pos] != '[') fail("expected '[' after 'z'");
        size_t start = pos;
        while (pos < text.size() && text[pos] != ']') ++pos;
        if (pos >= text.size()) fail("unterminated composition bracket");
        ++pos;
        try {
            return Composition::parse(text.substr(start, pos - start));
        } catch (const std::invalid_argument& e) {
            pos = start;
            fail(e.what());
        }
    }

    TruncatedSeries parse(int truncation) {
        TruncatedSeries out(truncation);
        bool first = true;
        while (!eof()) {
            int sign = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = (peek() == '-') ? -1 : 1;
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            skip_ws();
            if (pos >= text.size()) fail("dangling sign");
            Rational coeff = 1;
            bool have_coeff = false;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coeff = parse_rational();
                have_coeff = true;
            }
            skip_ws();
            if (pos < text.size() && (peek() == 'z' || peek() == 'Z')) {
                Composition s = parse_word();
                out.add_term(s, sign * coeff);
            } else if (have_coeff) {
                out.add_term(Composition{}, sign * coeff);
            } else {
                fail("expected a coefficient or 'z[...]'");
            }
            first = false;
        }
        if (first) fail("empty series");
        return out;
    }
};

}  // namespace

TruncatedSeries TruncatedSeries::parse(std::string_view text, int truncation) {
    return SeriesParser{text}.parse(truncation);
}

nlohmann::json TruncatedSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [s, c] : terms_) {
        terms.push_back({{"composition", s.parts()}, {"coefficient", rational_to_string(c)}});
    }
    return {{"truncation", truncation_}, {"terms", std::move(terms)}};
}

TruncatedSeries TruncatedSeries::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("terms"))
        throw std::invalid_argument("series JSON needs \"truncation\" and \"terms\"");
    TruncatedSeries out(j.at("truncation").get<int>());
    for (const auto& t : j.at("terms")) {
        Composition s(t.at("composition").get<std::vector<int>>());
        out.add_term(s, rational_from_string(t.at("coefficient").get<std::string>()));
    }
    return out;
}

namespace {

using WordProduct = std::map<Composition, Integer, GradedLess>;

struct PairGradedLess {
    bool operator()(const std::pair<Composition, Composition>& a,
                    const std::pair<Composition, Composition>& b) const {
        if (auto c = graded_compare(a.first, b.first); c != 0) return c < 0;
        return graded_compare(a.second, b.second) < 0;
    }
};

using StuffleCache = std::map<std::pair<Composition, Composition>, WordProduct, PairGradedLess>;

StuffleCache& stuffle_cache() {
    static StuffleCache cache;
    return cache;
}

std::mutex& stuffle_mutex() {
    static std::mutex m;
    return m;
}

WordProduct stuffle_words_uncached(const Composition& a, const Composition& b);

const WordProduct& stuffle_words_locked(const Composition& a, const Composition& b) {
    auto key = GradedLess{}(b, a) ? std::make_pair(b, a) : std::make_pair(a, b);
    auto& cache = stuffle_cache();
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    WordProduct result = stuffle_words_uncached(key.first, key.second);
    return cache.emplace(std::move(key), std::move(result)).first->second;
}

Composition prepend(int head, const Composition& tail) {
    std::vector<int> parts;
    parts.reserve(tail.parts().size() + 1);
    parts.push_back(head);
    parts.insert(parts.end(), tail.parts().begin(), tail.parts().end());
    return Composition(std::move(parts));
}

Composition drop_head(const Composition& c) {
    return Composition(std::vector<int>(c.parts().begin() + 1, c.parts().end()));
}

// (z_{k1} a') * (z_{k2} b') = z_{k1}(a' * z_{k2}b') + z_{k2}(z_{k1}a' * b')
//                           + z_{k1+k2}(a' * b'),   with 1 * w = w * 1 = w.
WordProduct stuffle_words_uncached(const Composition& a, const Composition& b) {
    WordProduct out;
    if (a.empty()) {
        out.emplace(b, 1);
        return out;
    }
    if (b.empty()) {
        out.emplace(a, 1);
        return out;
    }
    int k1 = a.parts().front();
    int k2 = b.parts().front();
    Composition ta = drop_head(a);
    Composition tb = drop_head(b);
    auto accumulate = [&out](int head, const WordProduct& sub) {
        for (const auto& [s, c] : sub) {
            auto [it, inserted] = out.emplace(prepend(head, s), c);
            if (!inserted) it->second += c;
        }
    };
    accumulate(k1, stuffle_words_locked(ta, b));
    accumulate(k2, stuffle_words_locked(a, tb));
    accumulate(k1 + k2, stuffle_words_locked(ta, tb));
    return out;
}

}  // namespace

const WordProduct& stuffle_words(const Composition& a, const Composition& b) {
    std::lock_guard lock(stuffle_mutex());
    return stuffle_words_locked(a, b);
}

TruncatedSeries stuffle(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.truncation(), b.truncation());
    TruncatedSeries out(n);
    std::lock_guard lock(stuffle_mutex());
    for (const auto& [s, cs] : a.terms()) {
        for (const auto& [t, ct] : b.terms()) {
            // The product of basis words is homogeneous of weight w(s)+w(t).
            if (s.weight() + t.weight() >= n) continue;
            Rational c = cs * ct;
            for (const auto& [u, m] : stuffle_words_locked(s, t)) out.add_term(u, c * m);
        }
    }
    return out;
}

TruncatedSeries concat(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.truncation(), b.truncation());
    TruncatedSeries out(n);
    for (const auto& [s, cs] : a.terms()) {
        for (const auto& [t, ct] : b.terms()) {
            if (s.weight() + t.weight() >= n) continue;
            std::vector<int> parts;
            parts.reserve(s.parts().size() + t.parts().size());
            parts.insert(parts.end(), s.parts().begin(), s.parts().end());
            parts.insert(parts.end(), t.parts().begin(), t.parts().end());
            out.add_term(Composition(std::move(parts)), cs * ct);
        }
    }
    return out;
}

TruncatedSeries geometric_inverse_one_plus_y(int truncation) {
    TruncatedSeries out(truncation);
    for (int j = 0; j < truncation; ++j) {
        out.add_term(Composition(std::vector<int>(static_cast<size_t>(j), 1)),
                     (j % 2 == 0) ? 1 : -1);
    }
    return out;
}

}  // namespace wzeta
