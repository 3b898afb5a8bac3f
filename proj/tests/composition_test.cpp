#include <doctest.h>

#include <algorithm>
#include <set>

#include "wzeta/composition.hpp"

using namespace wzeta;

namespace {

// Independent enumeration by recursive choice of the first part.
void collect(int remaining, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = 1; first <= remaining; ++first) {
        cur.push_back(first);
        collect(remaining - first, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> brute_force_below(int n) {
    std::vector<std::vector<int>> out{{}};
    for (int w = 1; w < n; ++w) {
        std::vector<int> cur;
        collect(w, cur, out);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int wa = 0, wb = 0;
        for (int x : a) wa += x;
        for (int x : b) wb += x;
        if (wa != wb) return wa < wb;
        return a < b;
    });
    return out;
}

}  // namespace

TEST_CASE("weight and depth") {
    CHECK(Composition{2, 1, 1}.weight() == 4);
    CHECK(Composition{2, 1, 1}.depth() == 3);
    CHECK(Composition{}.weight() == 0);
    CHECK(Composition{}.depth() == 0);
    CHECK(Composition{5}.weight() == 5);
}

TEST_CASE("parts are validated") {
    CHECK_THROWS_AS(Composition{0}, std::invalid_argument);
    CHECK_THROWS_AS(Composition(std::vector<int>{2, -1}), std::invalid_argument);
}

TEST_CASE("reversal") {
    CHECK(Composition{1, 4}.reversed() == Composition{4, 1});
    CHECK(Composition{2, 1}.reversed() == Composition{1, 2});
    CHECK(Composition{}.reversed() == Composition{});
    for (const auto& c : compositions_below(7)) {
        CHECK(c.reversed().reversed() == c);
        CHECK(c.reversed().weight() == c.weight());
        CHECK(c.reversed().depth() == c.depth());
    }
}

TEST_CASE("graded comparison examples") {
    CHECK(graded_compare(Composition{1, 1, 1}, Composition{2, 1}) < 0);
    CHECK(graded_compare(Composition{3}, Composition{1, 1, 1}) > 0);
    CHECK(graded_compare(Composition{2}, Composition{1, 1, 1}) < 0);
    CHECK(graded_compare(Composition{2, 1}, Composition{2, 1}) == 0);
    CHECK(graded_compare(Composition{1}, Composition{1, 1}) < 0);  // prefixes come first
}

TEST_CASE("graded comparison is a total order") {
    auto all = compositions_below(7);
    for (const auto& a : all) {
        for (const auto& b : all) {
            auto ab = graded_compare(a, b);
            auto ba = graded_compare(b, a);
            if (a == b) {
                CHECK(ab == 0);
            } else {
                CHECK(ab != 0);
            }
            CHECK((ab < 0) == (ba > 0));
            for (const auto& c : all) {
                if (ab < 0 && graded_compare(b, c) < 0) CHECK(graded_compare(a, c) < 0);
            }
        }
    }
}

TEST_CASE("enumerate compositions below a degree") {
    auto three = compositions_below(3);
    REQUIRE(three.size() == 4);
    CHECK(three[0] == Composition{});
    CHECK(three[1] == Composition{1});
    CHECK(three[2] == Composition{1, 1});
    CHECK(three[3] == Composition{2});

    auto four = compositions_below(4);
    REQUIRE(four.size() == 8);
    CHECK(four[4] == Composition{1, 1, 1});
    CHECK(four[5] == Composition{1, 2});
    CHECK(four[6] == Composition{2, 1});
    CHECK(four[7] == Composition{3});

    CHECK(compositions_below(7).size() == 64);  // 63 nonempty plus the empty one

    for (int n = 1; n <= 7; ++n) {
        auto got = compositions_below(n);
        auto expected = brute_force_below(n);
        REQUIRE(got.size() == expected.size());
        CHECK(got.size() == size_t{1} << (n - 1));
        for (size_t i = 0; i < got.size(); ++i) CHECK(got[i].parts() == expected[i]);
        CHECK(std::is_sorted(got.begin(), got.end(), GradedLess{}));
        for (size_t i = 0; i + 1 < got.size(); ++i)
            CHECK(graded_compare(got[i], got[i + 1]) < 0);  // strictly increasing
    }
}

TEST_CASE("compositions of a fixed weight") {
    for (int w = 1; w <= 8; ++w)
        CHECK(compositions_of_weight(w).size() == size_t{1} << (w - 1));
    CHECK_THROWS_AS(compositions_of_weight(0), std::invalid_argument);
}

TEST_CASE("prefixing by one") {
    CHECK(Composition{2, 1}.with_one_prefixed() == Composition{1, 2, 1});
    CHECK(Composition{}.with_one_prefixed() == Composition{1});
    CHECK(Composition{1}.with_one_prefixed() == Composition{1, 1});
}

TEST_CASE("text syntax") {
    CHECK(Composition::parse("[2,1]") == Composition{2, 1});
    CHECK(Composition::parse("[]") == Composition{});
    CHECK(Composition::parse(" [ 10 , 1 ] ") == Composition{10, 1});
    for (const auto& c : compositions_below(6)) CHECK(Composition::parse(c.str()) == c);
    CHECK(Composition{4, 1, 1}.str() == "[4,1,1]");
    CHECK(Composition{}.str() == "[]");

    CHECK_THROWS_AS(Composition::parse("2,1"), std::invalid_argument);
    CHECK_THROWS_AS(Composition::parse("[2,]"), std::invalid_argument);
    CHECK_THROWS_AS(Composition::parse("[0]"), std::invalid_argument);
    CHECK_THROWS_AS(Composition::parse("[1] junk"), std::invalid_argument);
    CHECK_THROWS_AS(Composition::parse("[1,2"), std::invalid_argument);
}
