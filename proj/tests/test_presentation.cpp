#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "orbicert/presentation.hpp"
#include "orbicert/word.hpp"

using namespace orbicert;

namespace {

Word random_word(std::mt19937& rng, std::size_t d, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> gen(1, static_cast<int>(d));
    std::bernoulli_distribution sign(0.5);
    Word w;
    std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int g = gen(rng);
        w.letters.push_back(sign(rng) ? g : -g);
    }
    return w;
}

}  // namespace

TEST_CASE("free_reduce", "[word]") {
    CHECK(free_reduce(Word{1, -1, 2}) == Word{2});
    CHECK(free_reduce(Word{}) == Word{});
    CHECK(free_reduce(Word{1, 2, -2, 1}) == Word{1, 1});
    CHECK(free_reduce(Word{1, 2, -2, -1, 3}) == Word{3});
}

TEST_CASE("cyclically_reduce", "[word]") {
    CHECK(cyclically_reduce(Word{-1, 2, 1}) == Word{2});
    CHECK(cyclically_reduce(Word{1, 2}) == Word{1, 2});
    CHECK(cyclically_reduce(Word{1, -1}) == Word{});
    CHECK(cyclically_reduce(Word{2, 1, 3, -1, -2}) == Word{3});
}

TEST_CASE("invert", "[word]") {
    CHECK(invert(Word{1, 2}) == Word{-2, -1});
    CHECK(invert(Word{}) == Word{});
    CHECK(invert(Word{-1}) == Word{1});
}

TEST_CASE("abelianize", "[word]") {
    CHECK(abelianize(Word{1, 2, -1, -2}, 2) == std::vector<std::int64_t>{0, 0});
    CHECK(abelianize(Word{1, 1, 2}, 2) == std::vector<std::int64_t>{2, 1});
    CHECK(abelianize(Word{}, 3) == std::vector<std::int64_t>{0, 0, 0});
}

TEST_CASE("proper power detection", "[word]") {
    CHECK(proper_power_exponent(Word{1, 2, 1, 2, 1, 2}) == std::size_t{3});
    CHECK(proper_power_exponent(Word{1, 1}) == std::size_t{2});
    CHECK_FALSE(proper_power_exponent(Word{1, 2, 2}).has_value());
    CHECK_FALSE(proper_power_exponent(Word{1}).has_value());
}

TEST_CASE("word properties hold on random words", "[word][property]") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 500; ++trial) {
        Word w = random_word(rng, 3, 12);
        Word r = free_reduce(w);
        Word c = cyclically_reduce(w);
        CHECK(free_reduce(r) == r);
        CHECK(cyclically_reduce(c) == c);
        CHECK(r.size() <= w.size());
        CHECK(c.size() <= r.size());
        CHECK(abelianize(r, 3) == abelianize(w, 3));
        CHECK(abelianize(c, 3) == abelianize(w, 3));
        CHECK(invert(invert(w)) == w);
        CHECK(free_reduce(concat(w, invert(w))).empty());
        for (std::size_t i = 1; i < r.size(); ++i) {
            CHECK(r[i] != -r[i - 1]);
        }
        if (c.size() >= 2) {
            CHECK(c[0] != -c[c.size() - 1]);
        }
    }
}

TEST_CASE("parse basic presentations", "[parse]") {
    Presentation p = parse_presentation("< x | x^3 >");
    REQUIRE(p.generator_count() == 1);
    REQUIRE(p.relator_count() == 1);
    CHECK(p.relators[0] == Relator{Word{1}, 3});

    Presentation q = parse_presentation("< x, y | x^2, y^3, (x*y)^5 >");
    REQUIRE(q.generator_count() == 2);
    REQUIRE(q.relator_count() == 3);
    CHECK(q.relators[0] == Relator{Word{1}, 2});
    CHECK(q.relators[1] == Relator{Word{2}, 3});
    CHECK(q.relators[2] == Relator{Word{1, 2}, 5});
}

TEST_CASE("orbifold exponent is the outermost power", "[parse]") {
    auto rel = [](char const* text) {
        return parse_presentation(text).relators.at(0);
    };
    CHECK(rel("<x|(x^2)^1>") == Relator{Word{1, 1}, 1});
    CHECK(rel("<x|(x^2)^3>") == Relator{Word{1, 1}, 3});
    CHECK(rel("<x|x^2^3>") == Relator{Word{1, 1}, 3});
    CHECK(rel("<x,y|x*y^3>") == Relator{Word{1, 2, 2, 2}, 1});
    CHECK(rel("<x,y|(x*y^3)^2>") == Relator{Word{1, 2, 2, 2}, 2});
    CHECK(rel("<x|x^-2>") == Relator{Word{-1, -1}, 1});
    CHECK(rel("<x|(x^-1)^4>") == Relator{Word{-1}, 4});
    CHECK(rel("<x,y|x>") == Relator{Word{1}, 1});
}

TEST_CASE("base words are cyclically reduced at parse time", "[parse]") {
    Presentation p = parse_presentation("< x, y | (x^-1*y*x)^4, x*y*y^-1*x >");
    CHECK(p.relators[0] == Relator{Word{2}, 4});
    CHECK(p.relators[1] == Relator{Word{1, 1}, 1});
}

TEST_CASE("whitespace and comments are insignificant", "[parse]") {
    Presentation p = parse_presentation("# comment\n<\n a , b_2 |\n (a * b_2) ^ 3 # tail\n>\n");
    CHECK(p.generator_names == std::vector<std::string>{"a", "b_2"});
    CHECK(p.relators[0] == Relator{Word{1, 2}, 3});
}

TEST_CASE("empty relator list", "[parse]") {
    Presentation p = parse_presentation("< a, b | >");
    CHECK(p.generator_count() == 2);
    CHECK(p.relator_count() == 0);
}

TEST_CASE("parse errors", "[parse]") {
    CHECK_THROWS_WITH(parse_presentation("< x | x^0 >"),
                      Catch::Matchers::ContainsSubstring("exponent must be >= 1"));
    CHECK_THROWS_WITH(parse_presentation("< x | (x*x)^0 >"),
                      Catch::Matchers::ContainsSubstring("exponent must be >= 1"));
    CHECK_THROWS_WITH(parse_presentation("< x | x*y >"),
                      Catch::Matchers::ContainsSubstring("unknown generator 'y'"));
    CHECK_THROWS_WITH(parse_presentation("< x | x*x^-1 >"),
                      Catch::Matchers::ContainsSubstring("empty"));
    CHECK_THROWS_WITH(parse_presentation("< x, x | x >"),
                      Catch::Matchers::ContainsSubstring("duplicate"));
    CHECK_THROWS_AS(parse_presentation("< x | x^3"), ParseError);
    CHECK_THROWS_AS(parse_presentation("x | x^3 >"), ParseError);
    CHECK_THROWS_AS(parse_presentation("< | x >"), ParseError);
    CHECK_THROWS_AS(parse_presentation("< x | x^3 > junk"), ParseError);
    CHECK_THROWS_AS(parse_presentation("< x | x^2^-1 >"), ParseError);
}

TEST_CASE("parse errors carry line and column", "[parse]") {
    try {
        parse_presentation("< x, y |\n  x^2, z >");
        FAIL("expected ParseError");
    } catch (ParseError const& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 8);
    }
}

TEST_CASE("parse_word", "[parse]") {
    std::vector<std::string> names{"x", "y"};
    CHECK(parse_word("x*y^-1", names) == Word{1, -2});
    CHECK(parse_word("(x*y)^2", names) == Word{1, 2, 1, 2});
    CHECK(parse_word("", names) == Word{});
    CHECK(parse_word("1", names) == Word{});
    CHECK(parse_word("x^2", names) == Word{1, 1});
    CHECK_THROWS_AS(parse_word("z", names), ParseError);
}

TEST_CASE("serialize then parse is the identity", "[parse][property]") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint64_t> expo(1, 9);
    for (int trial = 0; trial < 300; ++trial) {
        Presentation p;
        p.generator_names = {"a", "b", "c"};
        std::uniform_int_distribution<int> rcount(0, 4);
        int r = rcount(rng);
        while (static_cast<int>(p.relators.size()) < r) {
            Word base = cyclically_reduce(random_word(rng, 3, 8));
            if (!base.empty()) {
                p.relators.push_back({base, expo(rng)});
            }
        }
        std::string text = to_string(p);
        CAPTURE(text);
        CHECK(parse_presentation(text) == p);
        CHECK(to_string(parse_presentation(text)) == text);
    }
}

TEST_CASE("proper power warnings do not rewrite", "[parse]") {
    Presentation p = parse_presentation("< x, y | ((x*y)^2)^3, x^2 >");
    CHECK(p.relators[0] == Relator{Word{1, 2, 1, 2}, 3});
    auto w = presentation_warnings(p);
    REQUIRE(w.size() == 1);
    CHECK_THAT(w[0], Catch::Matchers::ContainsSubstring("relator 1"));
}

TEST_CASE("chi_orb", "[presentation]") {
    CHECK(chi_orb(parse_presentation("< x, y | x^2, y^3, (x*y)^5 >")) == Rational(1, 30));
    CHECK(chi_orb(parse_presentation("< a, b | >")) == -1);
    // all m_i = 1: chi_orb = 1 - d + r = 1 - deficiency
    Presentation p = parse_presentation("< a, b, c | a*b, b*c >");
    CHECK(chi_orb(p) == 1 - 3 + 2);
    CHECK(chi_orb(parse_presentation("< x, y | x^2, y^3, (x*y)^7 >")) == Rational(-1, 42));
    CHECK(chi_orb(parse_presentation("< x, y | x^2, y^3, (x*y)^6 >")) == 0);
}
