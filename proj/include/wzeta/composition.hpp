#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wzeta {

// A composition: finite ordered list of positive integers. The empty
// composition is a valid value and indexes the constant term of series.
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<int> parts);
    Composition(std::initializer_list<int> parts);

    // Text syntax: comma-separated parts in square brackets, "[2,1]"; "[]" is empty.
    static Composition parse(std::string_view text);

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return weight_; }
    int depth() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    Composition reversed() const;
    Composition with_one_prefixed() const;

    std::string str() const;

    bool operator==(const Composition&) const = default;

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

// Total order: weight ascending, ties broken by lexicographic comparison of
// parts (smaller integers first, proper prefixes first).
std::strong_ordering graded_compare(const Composition& a, const Composition& b);

struct GradedLess {
    bool operator()(const Composition& a, const Composition& b) const {
        return graded_compare(a, b) < 0;
    }
};

// All 2^{w-1} compositions of weight w (w >= 1), in graded order.
std::vector<Composition> compositions_of_weight(int w);

// All compositions of weight < n in graded order, the empty one first.
// Cardinality is 2^{n-1}.
std::vector<Composition> compositions_below(int n);

}  // namespace wzeta
