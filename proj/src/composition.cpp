#include "wzeta/composition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wzeta {

namespace {

int checked_weight(const std::vector<int>& parts) {
    int w = 0;
    for (int p : parts) {
        if (p < 1) throw std::invalid_argument("composition parts must be >= 1");
        w += p;
    }
    return w;
}

}  // namespace

Composition::Composition(std::vector<int> parts)
    : parts_(std::move(parts)), weight_(checked_weight(parts_)) {}

Composition::Composition(std::initializer_list<int> parts)
    : Composition(std::vector<int>(parts)) {}

Composition Composition::parse(std::string_view text) {
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i >= text.size() || text[i] != '[')
        throw std::invalid_argument("composition must start with '[': " + std::string(text));
    ++i;
    std::vector<int> parts;
    skip_ws();
    if (i < text.size() && text[i] == ']') {
        ++i;
    } else {
        while (true) {
            skip_ws();
            size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) throw std::invalid_argument("expected integer part in composition: " + std::string(text));
            long v = std::stol(std::string(text.substr(start, i - start)));
            if (v < 1 || v > 1000000) throw std::invalid_argument("composition part out of range");
            parts.push_back(static_cast<int>(v));
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            if (i < text.size() && text[i] == ']') { ++i; break; }
            throw std::invalid_argument("expected ',' or ']' in composition: " + std::string(text));
        }
    }
    skip_ws();
    if (i != text.size())
        throw std::invalid_argument("trailing characters after composition: " + std::string(text));
    return Composition(std::move(parts));
}

Composition Composition::reversed() const {
    std::vector<int> r(parts_.rbegin(), parts_.rend());
    return Composition(std::move(r));
}

Composition Composition::with_one_prefixed() const {
    std::vector<int> r;
    r.reserve(parts_.size() + 1);
    r.push_back(1);
    r.insert(r.end(), parts_.begin(), parts_.end());
    return Composition(std::move(r));
}

std::string Composition::str() const {
    std::string s = "[";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    s += ']';
    return s;
}

std::strong_ordering graded_compare(const Composition& a, const Composition& b) {
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    const auto& pa = a.parts();
    const auto& pb = b.parts();
    size_t m = std::min(pa.size(), pb.size());
    for (size_t i = 0; i < m; ++i)
        if (auto c = pa[i] <=> pb[i]; c != 0) return c;
    return pa.size() <=> pb.size();
}

std::vector<Composition> compositions_of_weight(int w) {
    if (w < 1) throw std::invalid_argument("compositions_of_weight requires w >= 1");
    if (w > 30) throw std::invalid_argument("compositions_of_weight: w too large");
    // Subsets of the w-1 gaps between unit blocks give the 2^{w-1} compositions.
    std::vector<Composition> out;
    out.reserve(1u << (w - 1));
    for (uint32_t mask = 0; mask < (1u << (w - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int gap = 0; gap < w - 1; ++gap) {
            if (mask & (1u << gap)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.emplace_back(std::move(parts));
    }
    std::sort(out.begin(), out.end(), GradedLess{});
    return out;
}

std::vector<Composition> compositions_below(int n) {
    if (n < 1) throw std::invalid_argument("compositions_below requires n >= 1");
    std::vector<Composition> out;
    out.push_back(Composition{});
    for (int w = 1; w < n; ++w) {
        auto cw = compositions_of_weight(w);
        out.insert(out.end(), cw.begin(), cw.end());
    }
    return out;
}

}  // namespace wzeta
