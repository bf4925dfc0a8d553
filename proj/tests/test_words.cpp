#include "torext/words.hpp"

#include "torext/exactmat.hpp"
#include "torext/extend.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace torext;

namespace {

IntMatrix m2(long a, long b, long c, long d) {
    IntMatrix m(2, 2);
    m << Int(a), Int(b), Int(c), Int(d);
    return m;
}

GeneratorWord word(int p, std::vector<GenToken> ts) { return GeneratorWord{p, std::move(ts)}; }

}  // namespace

TEST_CASE("eval_word: empty word and single tokens") {
    CHECK(matrices_equal(eval_word(word(2, {})), identity(2)));
    CHECK(matrices_equal(eval_word(word(2, {GenToken::shear_squared(1, 2)})), m2(1, 2, 0, 1)));
    // Conjugating R^2(1,2) by the quarter turn lands on the inverse of the
    // transposed twist: Q R^2(1,2) Q^-1 = [[1,0],[-2,1]].
    GeneratorWord w = word(2, {GenToken::quarter_turn(1, 2), GenToken::shear_squared(1, 2),
                               GenToken::quarter_turn(1, 2, true)});
    CHECK(matrices_equal(eval_word(w), m2(1, 0, -2, 1)));
}

TEST_CASE("eval_word matches token_matrix products") {
    std::mt19937_64 rng(211);
    for (int t = 0; t < 30; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        GeneratorWord w = testing::random_base_word(rng, p, 12);
        IntMatrix prod = identity(p);
        for (const GenToken& tok : w.tokens) prod = prod * token_matrix(tok, p);
        CHECK(matrices_equal(eval_word(w), prod));
    }
}

TEST_CASE("inverse_word evaluates to the inverse") {
    std::mt19937_64 rng(213);
    for (int t = 0; t < 20; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        GeneratorWord w = testing::random_base_word(rng, p, 10);
        IntMatrix prod = eval_word(w) * eval_word(inverse_word(w));
        CHECK(matrices_equal(prod, identity(p)));
    }
}

TEST_CASE("rewrite_to_base: pinned token sequence for a derived twist") {
    GeneratorWord w = word(3, {GenToken::shear_squared(2, 3)});
    GeneratorWord base = rewrite_to_base(w);
    REQUIRE(base.tokens.size() == 3);
    CHECK(base.tokens[0] == GenToken::quarter_turn(1, 2));
    CHECK(base.tokens[1] == GenToken::shear_squared(1, 3));
    CHECK(base.tokens[2] == GenToken::quarter_turn(1, 2, true));
    CHECK(matrices_equal(eval_word(base), token_matrix(GenToken::shear_squared(2, 3), 3)));
}

TEST_CASE("rewrite_to_base: base-only words are fixed points") {
    std::mt19937_64 rng(217);
    for (int t = 0; t < 20; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        GeneratorWord w = testing::random_base_word(rng, p, 8);
        GeneratorWord r = rewrite_to_base(w);
        CHECK(r.tokens == w.tokens);
    }
}

TEST_CASE("rewrite_to_base: exhaustive over every derived token") {
    for (int p = 2; p <= 5; ++p) {
        std::vector<GenToken> all;
        for (int i = 1; i <= p; ++i)
            for (int j = 1; j <= p; ++j) {
                if (i == j) continue;
                for (bool inv : {false, true}) {
                    all.push_back(GenToken::shear_squared(i, j, inv));
                    all.push_back(GenToken::quarter_turn(i, j, inv));
                    for (int k = 1; k <= p; ++k) {
                        if (k == i || k == j) continue;
                        all.push_back(GenToken::shear_pair(i, j, k, inv));
                    }
                }
            }
        for (const GenToken& t : all) {
            GeneratorWord w = word(p, {t});
            GeneratorWord base = rewrite_to_base(w);
            for (const GenToken& bt : base.tokens) CHECK(bt.is_base(p));
            CHECK(matrices_equal(eval_word(base), token_matrix(t, p)));
        }
    }
}

TEST_CASE("rewrite_to_base preserves evaluation on random derived words") {
    std::mt19937_64 rng(219);
    for (int t = 0; t < 40; ++t) {
        const int p = 3 + static_cast<int>(rng() % 3);
        GeneratorWord w;
        w.p = p;
        std::uniform_int_distribution<int> idx(1, p), kind(0, 2), coin(0, 1);
        for (int s = 0; s < 6; ++s) {
            int i = idx(rng), j = idx(rng), k = idx(rng);
            if (i == j) continue;
            bool inv = coin(rng) != 0;
            switch (kind(rng)) {
                case 0: w.tokens.push_back(GenToken::shear_squared(i, j, inv)); break;
                case 1: w.tokens.push_back(GenToken::quarter_turn(i, j, inv)); break;
                default:
                    if (k != i && k != j) w.tokens.push_back(GenToken::shear_pair(i, j, k, inv));
                    break;
            }
        }
        IntMatrix direct = identity(p);
        for (const GenToken& tok : w.tokens) direct = direct * token_matrix(tok, p);
        CHECK(matrices_equal(eval_word(rewrite_to_base(w)), direct));
    }
}

TEST_CASE("decompose_odd_columns: frozen examples") {
    GeneratorWord e = decompose_odd_columns(identity(2));
    CHECK(e.tokens.empty());

    GeneratorWord r = decompose_odd_columns(m2(1, 2, 0, 1));
    REQUIRE(r.tokens.size() == 1);
    CHECK(r.tokens[0] == GenToken::shear_squared(1, 2));

    IntMatrix a = m2(3, 2, 4, 3);
    GeneratorWord w = decompose_odd_columns(a);
    CHECK(matrices_equal(eval_word(w), a));
}

TEST_CASE("decompose_odd_columns: rejections") {
    CHECK_THROWS_WITH_AS(decompose_odd_columns(m2(1, 1, 0, 1)),
                         "even column sum: column 2", domain_error);
    CHECK_THROWS_AS(decompose_odd_columns(m2(2, 1, 1, 1)), domain_error);  // det != 1
    IntMatrix one(1, 1);
    one(0, 0) = 1;
    CHECK_THROWS_AS(decompose_odd_columns(one), domain_error);  // p = 1
}

TEST_CASE("decompose_odd_columns: round trip on random base words") {
    std::mt19937_64 rng(223);
    for (int t = 0; t < 60; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        GeneratorWord w = testing::bounded_random_base_word(rng, p, 25);
        IntMatrix u = eval_word(w);
        GeneratorWord back = decompose_odd_columns(u);
        CHECK(matrices_equal(eval_word(back), u));
    }
}

TEST_CASE("closure: base words evaluate to odd-column-sum matrices") {
    std::mt19937_64 rng(227);
    for (int t = 0; t < 40; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        IntMatrix u = eval_word(testing::random_base_word(rng, p, 15));
        CHECK(is_extendable(u));
    }
}

TEST_CASE("factor_KJ: frozen examples") {
    for (int i = 1; i <= 2; ++i) {
        auto [k, j] = factor_KJ(identity(2), i);
        CHECK(k.tokens.empty());
        CHECK(matrices_equal(j, identity(2)));
        CHECK(cofactor(j, i, i) == 1);
    }
    auto [k1, j1] = factor_KJ(m2(1, 1, 0, 1), 1);
    CHECK(k1.tokens.empty());
    CHECK(matrices_equal(j1, m2(1, 1, 0, 1)));

    IntMatrix u = m2(3, 2, 4, 3);
    auto [k2, j2] = factor_KJ(u, 1);
    CHECK(matrices_equal(eval_word(k2) * j2, u));
    CHECK(cofactor(j2, 1, 1) == 1);
}

TEST_CASE("factor_KJ: postconditions for random unimodular input, every index") {
    std::mt19937_64 rng(229);
    for (int t = 0; t < 25; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        IntMatrix u = testing::random_sl(rng, p);
        for (int i = 1; i <= p; ++i) {
            auto [k, j] = factor_KJ(u, i);
            CHECK(matrices_equal(eval_word(k) * j, u));
            CHECK(cofactor(j, i, i) == 1);
            for (const GenToken& tok : k.tokens) {
                CHECK(tok.kind != TokenKind::ShearPair);
                CHECK(tok.i == 1);
            }
        }
    }
}

TEST_CASE("word JSON round trip") {
    std::mt19937_64 rng(233);
    for (int t = 0; t < 15; ++t) {
        const int p = 2 + static_cast<int>(rng() % 4);
        GeneratorWord w = testing::random_base_word(rng, p, 10);
        GeneratorWord back = word_from_json(word_to_json(w), p);
        CHECK(back.tokens == w.tokens);
    }
    CHECK_THROWS_AS(
        word_from_json(nlohmann::json::parse(R"([{"kind":"RRp","i":2,"j":2,"inv":false}])"), 3),
        parse_error);
}
