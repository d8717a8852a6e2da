#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncfilt/poly.hpp"

using namespace ncfilt;

namespace {

AlphabetPtr xy_alphabet(unsigned wx = 1, unsigned wy = 1) {
    return std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"x", wx, 0, 0}, {"y", wy, 0, 0}}));
}

std::mt19937_64 rng_for(const char* tag) {
    std::uint64_t seed = 0x51ED2701ull;
    if (const char* env = std::getenv("NCFILT_SEED")) seed = std::strtoull(env, nullptr, 10);
    for (const char* c = tag; *c; ++c) seed = seed * 131 + static_cast<unsigned char>(*c);
    return std::mt19937_64(seed);
}

Word random_word(std::mt19937_64& rng, std::size_t alphabet_size, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(alphabet_size) - 1);
    Word w(len(rng));
    for (auto& g : w) g = static_cast<GenIndex>(pick(rng));
    return w;
}

Poly random_poly(std::mt19937_64& rng, const AlphabetPtr& alpha, std::size_t max_terms) {
    std::uniform_int_distribution<std::size_t> nterms(0, max_terms);
    std::uniform_int_distribution<long long> coeff(-9, 9);
    Poly p(alpha, ScalarDomain::rational());
    const std::size_t n = nterms(rng);
    for (std::size_t i = 0; i < n; ++i)
        p.add_term(random_word(rng, alpha->size(), 5), Scalar::integer(coeff(rng)));
    return p;
}

} // namespace

TEST_CASE("word_weight is the sum of generator weights") {
    auto alpha = xy_alphabet();
    CHECK(alpha->word_weight({}) == 0);
    CHECK(alpha->word_weight({0, 1}) == 2);
    // quantized Weyl n=2 convention: deg(x_i) = deg(y_i) = i
    auto qw2 = std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"x1", 1, 0, 0}, {"y1", 1, 0, 0}, {"x2", 2, 0, 0}, {"y2", 2, 0, 0}}));
    CHECK(qw2->word_weight({2, 3}) == 4); // x2*y2
}

TEST_CASE("free_mul concatenates words bilinearly") {
    auto alpha = xy_alphabet();
    ScalarDomain dom = ScalarDomain::rational();
    Poly x = Poly::generator(alpha, 0, dom);
    Poly y = Poly::generator(alpha, 1, dom);
    Poly one = Poly::constant(alpha, Scalar::integer(1));

    CHECK(free_mul(x + y, one) == (x + y));
    CHECK(free_mul(x, y) == Poly::monomial(alpha, {0, 1}, Scalar::integer(1)));

    // (x + y)(x - y) = xx - xy + yx - yy in the free algebra
    Poly prod = free_mul(x + y, x - y);
    Poly expected(alpha, dom);
    expected.add_term({0, 0}, Scalar::integer(1));
    expected.add_term({0, 1}, Scalar::integer(-1));
    expected.add_term({1, 0}, Scalar::integer(1));
    expected.add_term({1, 1}, Scalar::integer(-1));
    CHECK(prod == expected);
}

TEST_CASE("free_mul rejects mismatched contexts") {
    auto a1 = xy_alphabet(), a2 = xy_alphabet(1, 2);
    Poly p = Poly::generator(a1, 0, ScalarDomain::rational());
    Poly q = Poly::generator(a2, 0, ScalarDomain::rational());
    CHECK_THROWS_AS(free_mul(p, q), DomainMismatch);
    Poly r = Poly::generator(a1, 0, ScalarDomain::prime_field(5));
    CHECK_THROWS_AS(free_mul(p, r), DomainMismatch);
}

TEST_CASE("free_mul associativity and distributivity on random triples") {
    auto alpha = std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"x", 1, 0, 0}, {"y", 2, 0, 0}, {"z", 1, 0, 0}}));
    auto rng = rng_for("assoc");
    for (int i = 0; i < 1200; ++i) {
        Poly p = random_poly(rng, alpha, 4);
        Poly q = random_poly(rng, alpha, 4);
        Poly r = random_poly(rng, alpha, 4);
        CHECK(free_mul(free_mul(p, q), r) == free_mul(p, free_mul(q, r)));
        CHECK(free_mul(p, q + r) == (free_mul(p, q) + free_mul(p, r)));
        CHECK(free_mul(p + q, r) == (free_mul(p, r) + free_mul(q, r)));
    }
}

TEST_CASE("weights are additive under concatenation") {
    auto alpha = std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"x", 1, 0, 0}, {"y", 3, 0, 0}}));
    auto rng = rng_for("weights");
    for (int i = 0; i < 1000; ++i) {
        Word u = random_word(rng, 2, 6), v = random_word(rng, 2, 6);
        CHECK(alpha->word_weight(word_concat(u, v)) ==
              alpha->word_weight(u) + alpha->word_weight(v));
    }
}

TEST_CASE("monomial order is total and multiplication-compatible") {
    auto alpha = std::make_shared<Alphabet>(Alphabet::with_default_precedence(
        {{"x", 1, 0, 0}, {"y", 2, 0, 0}, {"g", 0, 0, 2}}));
    auto rng = rng_for("order");
    auto less = [&](const Word& a, const Word& b) { return alpha->word_less(a, b); };
    for (int i = 0; i < 1500; ++i) {
        Word u = random_word(rng, 3, 5), v = random_word(rng, 3, 5), w = random_word(rng, 3, 4);
        // totality / antisymmetry
        if (u != v) CHECK((less(u, v) || less(v, u)));
        CHECK_FALSE((less(u, v) && less(v, u)));
        // compatibility with concatenation on both sides
        if (less(u, v)) {
            CHECK(less(word_concat(w, u), word_concat(w, v)));
            CHECK(less(word_concat(u, w), word_concat(v, w)));
        }
        // transitivity sample
        if (less(u, v) && less(v, w)) CHECK(less(u, w));
    }
}

TEST_CASE("polynomials never store zero coefficients") {
    auto alpha = xy_alphabet();
    Poly p(alpha, ScalarDomain::rational());
    p.add_term({0}, Scalar::integer(2));
    p.add_term({0}, Scalar::integer(-2));
    CHECK(p.is_zero());
    CHECK(p.term_count() == 0);
}
