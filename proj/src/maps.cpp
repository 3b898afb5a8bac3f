#include "wzeta/maps.hpp"

#include <stdexcept>

namespace wzeta {

TruncatedSeries psi1(const TruncatedSeries& a) {
    TruncatedSeries out(a.truncation());
    for (const auto& [s, c] : a.terms()) {
        Rational signed_c = (s.weight() % 2 == 0) ? c : -c;
        out.add_term(s.reversed(), signed_c);
    }
    return out;
}

namespace {

// Enumerates the b-vectors of phi1 for one basis word: position by position,
// bounded by the remaining weight budget.
void phi1_expand(const Composition& s, const Rational& coeff, int truncation,
                 TruncatedSeries& out) {
    const auto& parts = s.parts();
    std::vector<int> bumped(parts.begin(), parts.end());
    int budget = truncation - 1 - s.weight();  // max total weight to add
    if (budget < 0) return;

    // depth-first over positions; carry the running binomial product
    auto rec = [&](auto&& self, size_t pos, int used, const Integer& prod) -> void {
        if (pos == parts.size()) {
            out.add_term(Composition(std::vector<int>(bumped)), coeff * prod);
            return;
        }
        for (int b = 0; used + b <= budget; ++b) {
            bumped[pos] = parts[pos] + b;
            Integer c = prod * binomial(static_cast<unsigned long>(parts[pos] + b - 1),
                                        static_cast<unsigned long>(b));
            self(self, pos + 1, used + b, c);
        }
        bumped[pos] = parts[pos];
    };
    rec(rec, 0, 0, Integer(1));
}

}  // namespace

TruncatedSeries phi1(const TruncatedSeries& a) {
    TruncatedSeries out(a.truncation());
    for (const auto& [s, c] : a.terms()) phi1_expand(s, c, a.truncation(), out);
    return out;
}

TruncatedSeries psi2(const TruncatedSeries& a) {
    TruncatedSeries out(a.truncation());
    for (const auto& [s, c] : a.terms()) {
        std::string word = z_to_xy(s).letters();
        // Every original Y picks up -1; every original X branches into X or Y.
        Rational coeff = (s.depth() % 2 == 0) ? c : -c;
        std::vector<size_t> x_positions;
        for (size_t i = 0; i < word.size(); ++i)
            if (word[i] == 'X') x_positions.push_back(i);
        if (x_positions.size() >= 31) throw std::invalid_argument("psi2: word too long");
        uint32_t branches = 1u << x_positions.size();
        std::string branch = word;
        for (uint32_t mask = 0; mask < branches; ++mask) {
            for (size_t j = 0; j < x_positions.size(); ++j)
                branch[x_positions[j]] = (mask & (1u << j)) ? 'Y' : 'X';
            out.add_term(xy_to_z(BinaryWord(branch)), coeff);
        }
    }
    return out;
}

TruncatedSeries phi2(const TruncatedSeries& a) {
    int n = a.truncation();
    TruncatedSeries one_plus_y = TruncatedSeries::one(n);
    one_plus_y.add_term(Composition{1}, 1);
    return concat(one_plus_y, stuffle(geometric_inverse_one_plus_y(n), a));
}

TruncatedSeries kernel_element(int family, const TruncatedSeries& a) {
    switch (family) {
        case 1: return phi1(a) - psi1(a);
        case 2: return phi2(a) - psi2(a);
        default: throw std::invalid_argument("kernel family must be 1 or 2");
    }
}

namespace {

using WordSeries = std::map<std::string, Rational>;

// d(x)=x^2, d(y)=xy, extended as a derivation of the concatenation product.
// Raises word length by exactly one.
WordSeries apply_derivation(const WordSeries& in) {
    WordSeries out;
    auto add = [&out](std::string w, const Rational& c) {
        auto [it, inserted] = out.emplace(std::move(w), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [w, c] : in) {
        for (size_t i = 0; i < w.size(); ++i) {
            std::string r = w.substr(0, i);
            r += (w[i] == 'X') ? "XX" : "XY";
            r += w.substr(i + 1);
            add(std::move(r), c);
        }
    }
    return out;
}

}  // namespace

TruncatedSeries exp_derivation(const TruncatedSeries& a) {
    int n = a.truncation();
    WordSeries layer;
    for (const auto& [s, c] : a.terms()) layer[z_to_xy(s).letters()] += c;

    TruncatedSeries out(n);
    Rational factorial = 1;
    for (int m = 0; !layer.empty(); ++m) {
        if (m > 0) factorial *= m;
        WordSeries kept;  // words already at the truncation only grow longer
        for (const auto& [w, c] : layer) {
            if (static_cast<int>(w.size()) < n) {
                out.add_term(xy_to_z(BinaryWord(w)), c / factorial);
                kept.emplace(w, c);
            }
        }
        if (kept.empty()) break;
        layer = apply_derivation(kept);
    }
    return out;
}

bool exp_derivation_matches_phi1(const TruncatedSeries& a) {
    return exp_derivation(a) == phi1(a);
}

}  // namespace wzeta
