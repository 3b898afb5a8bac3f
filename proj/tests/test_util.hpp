#pragma once

// Helpers shared by the test suites: independent oracles (quasi-symmetric
// polynomial expansion, direct harmonic summation) and small fixtures.

#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "wzeta/algebra.hpp"

namespace wzeta::testutil {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("wzeta-test-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        std::filesystem::path p = path / name;
        std::ofstream os(p);
        os << content;
        return p;
    }
};

inline std::vector<Composition> words_up_to_weight(int w) {
    std::vector<Composition> out;
    for (const auto& c : compositions_below(w + 1))
        if (!c.empty()) out.push_back(c);
    return out;
}

inline TruncatedSeries random_series(std::mt19937& rng, int truncation, int max_word_weight,
                                     bool with_constant = true) {
    auto words = words_up_to_weight(max_word_weight);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    TruncatedSeries a(truncation);
    if (with_constant) a.add_term(Composition{}, Rational(num(rng), den(rng)));
    for (int i = 0; i < 5; ++i) a.add_term(words[pick(rng)], Rational(num(rng), den(rng)));
    return a;
}

// ---- quasi-symmetric polynomial oracle ---------------------------------
// M_s expanded in kQsymVars variables as an explicit exponent-vector map;
// products are computed monomial by monomial, independent of the stuffle
// recursion.

constexpr int kQsymVars = 8;
using QsymMonomial = std::array<int, kQsymVars>;
using QsymPoly = std::map<QsymMonomial, Rational>;

inline QsymPoly monomial_qsym(const Composition& s) {
    QsymPoly out;
    int k = s.depth();
    if (k == 0) {
        out[QsymMonomial{}] = 1;
        return out;
    }
    std::vector<int> pos(static_cast<size_t>(k));
    auto rec = [&](auto&& self, int idx, int lo) -> void {
        if (idx == k) {
            QsymMonomial m{};
            for (int j = 0; j < k; ++j)
                m[static_cast<size_t>(pos[static_cast<size_t>(j)])] =
                    s.parts()[static_cast<size_t>(j)];
            out[m] += 1;
            return;
        }
        for (int v = lo; v < kQsymVars; ++v) {
            pos[static_cast<size_t>(idx)] = v;
            self(self, idx + 1, v + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline QsymPoly qsym_mul(const QsymPoly& a, const QsymPoly& b) {
    QsymPoly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            QsymMonomial m;
            for (size_t i = 0; i < kQsymVars; ++i) m[i] = ma[i] + mb[i];
            out[m] += ca * cb;
        }
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

inline QsymPoly qsym_of_series(const TruncatedSeries& a) {
    QsymPoly out;
    for (const auto& [s, c] : a.terms())
        for (auto& [m, coeff] : monomial_qsym(s)) out[m] += c * coeff;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

// Direct summation over strictly decreasing index tuples.
inline Rational mhs_brute(long n, const Composition& s) {
    std::function<Rational(size_t, long)> rec = [&](size_t idx, long below) -> Rational {
        if (idx == s.parts().size()) return 1;
        Rational acc = 0;
        for (long m = static_cast<long>(s.parts().size() - idx); m < below; ++m) {
            Rational term = rec(idx + 1, m);
            if (term == 0) continue;
            Rational p = 1;
            for (int e = 0; e < s.parts()[idx]; ++e) p /= m;
            acc += term * p;
        }
        return acc;
    };
    return rec(0, n + 1);
}

}  // namespace wzeta::testutil
