#include <doctest.h>

#include <random>
#include <thread>

#include "test_util.hpp"
#include "wzeta/algebra.hpp"

using namespace wzeta;
using testutil::words_up_to_weight;

TEST_CASE("binary word conversions") {
    CHECK(z_to_xy(Composition{3}).str() == "XXY");
    CHECK(z_to_xy(Composition{2, 1}).str() == "XYY");
    CHECK(z_to_xy(Composition{}).str() == "");
    CHECK(xy_to_z(BinaryWord("XXY")) == Composition{3});
    CHECK(xy_to_z(BinaryWord("YXY")) == Composition{1, 2});
    CHECK_THROWS_AS(xy_to_z(BinaryWord("XX")), std::invalid_argument);
    CHECK_THROWS_AS(BinaryWord("XZ"), std::invalid_argument);
    for (const auto& c : compositions_below(7)) CHECK(xy_to_z(z_to_xy(c)) == c);
}

TEST_CASE("series construction and truncation") {
    auto a = TruncatedSeries::basis(Composition{8}, 5);
    CHECK(a.is_zero());  // weight at or above the truncation is discarded

    auto b = TruncatedSeries::basis(Composition{2, 1}, 5);
    CHECK(b.coefficient(Composition{2, 1}) == 1);
    b.add_term(Composition{2, 1}, -1);
    CHECK(b.is_zero());

    CHECK_THROWS_AS(TruncatedSeries(0), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::one(5).truncated(6), std::invalid_argument);
}

TEST_CASE("stuffle examples") {
    auto z1 = TruncatedSeries::basis(Composition{1}, 6);
    auto z2 = TruncatedSeries::basis(Composition{2}, 6);

    auto sq = stuffle(z1, z1);
    CHECK(sq == TruncatedSeries::parse("2 z[1,1] + 1 z[2]", 6));

    auto pr = stuffle(z1, z2);
    CHECK(pr == TruncatedSeries::parse("z[1,2] + z[2,1] + z[3]", 6));

    auto a = TruncatedSeries::parse("2 z[2,1] - 1/3 z[1] + 5", 6);
    CHECK(stuffle(TruncatedSeries::one(6), a) == a);
    CHECK(stuffle(a, TruncatedSeries::one(6)) == a);
}

TEST_CASE("stuffle is commutative and associative") {
    std::mt19937 rng(20240811);
    auto words = words_up_to_weight(4);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = TruncatedSeries::basis(words[pick(rng)], 8);
        auto b = TruncatedSeries::basis(words[pick(rng)], 8);
        auto c = TruncatedSeries::basis(words[pick(rng)], 8);
        CHECK(stuffle(a, b) == stuffle(b, a));
        CHECK(stuffle(stuffle(a, b), c) == stuffle(a, stuffle(b, c)));
    }
}

TEST_CASE("stuffle matches the quasi-symmetric polynomial oracle") {
    auto all = compositions_below(5);  // weights <= 4
    for (const auto& s : all) {
        for (const auto& t : all) {
            auto product = stuffle(TruncatedSeries::basis(s, 9), TruncatedSeries::basis(t, 9));
            CHECK(testutil::qsym_of_series(product) ==
                  testutil::qsym_mul(testutil::monomial_qsym(s), testutil::monomial_qsym(t)));
        }
    }
}

TEST_CASE("truncating commutes with stuffle") {
    std::mt19937 rng(7);
    auto words = words_up_to_weight(4);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        TruncatedSeries a(8), b(8);
        for (int i = 0; i < 4; ++i) {
            a.add_term(words[pick(rng)], coeff(rng));
            b.add_term(words[pick(rng)], coeff(rng));
        }
        for (int m : {3, 5, 7}) {
            CHECK(stuffle(a, b).truncated(m) == stuffle(a.truncated(m), b.truncated(m)));
        }
    }
}

TEST_CASE("memoized word products are stable and thread-safe") {
    auto once = stuffle_words(Composition{2, 1}, Composition{1, 3});
    auto again = stuffle_words(Composition{2, 1}, Composition{1, 3});
    CHECK(once == again);
    CHECK(stuffle_words(Composition{1, 3}, Composition{2, 1}) == once);

    auto words = words_up_to_weight(4);
    std::vector<std::map<Composition, Integer, GradedLess>> results(4);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&, t] {
            std::map<Composition, Integer, GradedLess> acc;
            for (const auto& s : words)
                for (const auto& [u, c] : stuffle_words(s, s.reversed())) acc[u] += c;
            results[static_cast<size_t>(t)] = std::move(acc);
        });
    }
    for (auto& t : threads) t.join();
    for (int t = 1; t < 4; ++t) CHECK(results[static_cast<size_t>(t)] == results[0]);
}

TEST_CASE("concatenation product") {
    auto z1 = TruncatedSeries::basis(Composition{1}, 6);
    auto z21 = TruncatedSeries::basis(Composition{2, 1}, 6);
    CHECK(concat(z1, z21) == TruncatedSeries::basis(Composition{1, 2, 1}, 6));
    CHECK(concat(z1, z1) == TruncatedSeries::basis(Composition{1, 1}, 6));
    auto a = TruncatedSeries::parse("1/2 z[3] - z[1,1]", 6);
    CHECK(concat(TruncatedSeries::one(6), a) == a);
    CHECK(concat(a, TruncatedSeries::one(6)) == a);
}

TEST_CASE("geometric inverse of 1+y") {
    CHECK(geometric_inverse_one_plus_y(3) == TruncatedSeries::parse("1 - z[1] + z[1,1]", 3));
    CHECK(geometric_inverse_one_plus_y(1) == TruncatedSeries::one(1));
    for (int n = 1; n <= 6; ++n) {
        TruncatedSeries one_plus_y = TruncatedSeries::one(n);
        one_plus_y.add_term(Composition{1}, 1);
        CHECK(concat(one_plus_y, geometric_inverse_one_plus_y(n)) == TruncatedSeries::one(n));
    }
}

TEST_CASE("series text syntax") {
    auto a = TruncatedSeries::parse("1 z[1] - 1/3 z[2,1]", 7);
    CHECK(a.coefficient(Composition{1}) == 1);
    CHECK(a.coefficient(Composition{2, 1}) == Rational(-1, 3));
    CHECK(a.term_count() == 2);

    CHECK(TruncatedSeries::parse("0", 5).is_zero());
    CHECK(TruncatedSeries::parse("  -  1/2z[1,1]+3 ", 5) ==
          TruncatedSeries::parse("3 - 1/2 z[1,1]", 5));
    CHECK(TruncatedSeries::parse("z[2] + z[2]", 5) ==
          TruncatedSeries::parse("2 z[2]", 5));
    CHECK(TruncatedSeries::parse("5/10", 5).constant_term() == Rational(1, 2));

    // errors carry a position
    CHECK_THROWS_WITH_AS(TruncatedSeries::parse("1 +", 5), doctest::Contains("position"),
                         std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::parse("", 5), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::parse("q z[1]", 5), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::parse("1 z[1] 2 z[2]", 5), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::parse("1/0 z[1]", 5), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::parse("1 z[1", 5), std::invalid_argument);
}

TEST_CASE("series text and JSON round trips") {
    std::mt19937 rng(99);
    auto words = words_up_to_weight(5);
    std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        TruncatedSeries a(6);
        a.add_term(Composition{}, Rational(num(rng), den(rng)));
        for (int i = 0; i < 5; ++i)
            a.add_term(words[pick(rng)], Rational(num(rng), den(rng)));
        CHECK(TruncatedSeries::parse(a.str(), 6) == a);
        CHECK(TruncatedSeries::from_json(a.to_json()) == a);
    }
    CHECK_THROWS_AS(TruncatedSeries::from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("rational parsing") {
    CHECK(rational_from_string("-1/3") == Rational(-1, 3));
    CHECK(rational_from_string("+2/6") == Rational(1, 3));
    CHECK(rational_from_string("12") == 12);
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("a/3"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
    CHECK(rational_to_string(rational_from_string("-5/10")) == "-1/2");
}
