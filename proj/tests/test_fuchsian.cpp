#include <doctest.h>

#include <cmath>
#include <set>

#include "speclab/fuchsian.hpp"
#include "speclab/rng.hpp"

using namespace speclab;
using namespace speclab::fuchsian;

namespace {
const SurfaceGroup& octagon() {
    static SurfaceGroup g = build_genus2_octagon();
    return g;
}

Word random_reduced_word(CounterRng& rng, int len) {
    Word w;
    while ((int)w.size() < len) {
        Letter l = (Letter)rng.next_below(8);
        if (!w.empty() && w.back() == inverse_letter(l)) continue;
        w.push_back(l);
    }
    return w;
}
}  // namespace

TEST_CASE("octagon group invariants") {
    const auto& g = octagon();
    REQUIRE(g.generators.size() == 4);
    for (const auto& m : g.generators) {
        CHECK(std::fabs(m.det() - 1.0) < 1e-12);
        CHECK(std::fabs(m.trace()) > 2.0);
    }
    Mobius rel = word_matrix(g, g.relator);
    CHECK(frob_dist_projective_identity(rel) < 1e-9);

    // all generators share the systolic translation length 2 arccosh(1+sqrt 2)
    double ell = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    double tr0 = std::fabs(g.generators[0].trace());
    for (const auto& m : g.generators) {
        CHECK(std::fabs(std::fabs(m.trace()) - tr0) < 1e-9);
        CHECK(translation_length(m) == doctest::Approx(ell).epsilon(1e-12));
    }
    CHECK(ell == doctest::Approx(3.05714).epsilon(1e-5));
}

TEST_CASE("translation length on diagonal translations") {
    Mobius m{std::exp(1.0), 0, 0, std::exp(-1.0)};
    CHECK(translation_length(m) == doctest::Approx(2.0).epsilon(1e-12));
    double t = 0.73;
    Mobius m2{std::exp(t / 2), 0, 0, std::exp(-t / 2)};
    CHECK(translation_length(m2) == doctest::Approx(t).epsilon(1e-12));
    Mobius rot{0.6, -0.8, 0.8, 0.6};
    CHECK_THROWS_AS(translation_length(rot), std::domain_error);
}

TEST_CASE("word_matrix basics") {
    const auto& g = octagon();
    CHECK(frob_dist(word_matrix(g, {}), Mobius::identity()) == 0.0);
    // words kept short so determinant-cancellation noise stays far below the
    // tolerance: failures here mean composition logic, not rounding
    CounterRng rng(11, 0);
    for (int trial = 0; trial < 50; trial++) {
        Word w = random_reduced_word(rng, 1 + (int)rng.next_below(3));
        Mobius mw = word_matrix(g, w);
        CHECK(frob_dist_projective_identity(mw * mw.inverse()) < 1e-9);
        Mobius sq = word_matrix(g, concat(w, w));
        Mobius mm = mw * mw;
        CHECK(frob_dist(sq, mm) / (1.0 + std::sqrt(mm.frob_sq())) < 1e-6);
    }
    // homomorphism property, relative to the product magnitude
    for (int trial = 0; trial < 50; trial++) {
        Word u = random_reduced_word(rng, 1 + (int)rng.next_below(4));
        Word v = random_reduced_word(rng, 1 + (int)rng.next_below(4));
        Mobius p = word_matrix(g, u) * word_matrix(g, v);
        CHECK(frob_dist(word_matrix(g, concat(u, v)), p) /
                  (1.0 + std::sqrt(p.frob_sq())) <
              1e-6);
    }
}

TEST_CASE("dehn reduce") {
    const auto& g = octagon();
    CHECK(reduce(g, word_from_string("aA")).empty());
    CHECK(reduce(g, g.relator).empty());
    CHECK(word_to_string(reduce(g, word_from_string("a"))) == "a");
    // random w u relator u^-1 w^-1 style identities reduce to empty
    CounterRng rng(13, 0);
    for (int trial = 0; trial < 30; trial++) {
        Word u = random_reduced_word(rng, (int)rng.next_below(5));
        Word w = concat(concat(u, g.relator), inverse_word(u));
        CHECK(reduce(g, w).empty());
    }
    // reduce never returns a longer word, and w r^-1 is the identity
    for (int trial = 0; trial < 30; trial++) {
        Word w = random_reduced_word(rng, 1 + (int)rng.next_below(14));
        Word r = reduce(g, w);
        CHECK(r.size() <= free_reduce(w).size());
        CHECK(reduce(g, concat(w, inverse_word(r))).empty());
    }
}

TEST_CASE("cyclic_canonical is constant on conjugacy classes") {
    const auto& g = octagon();
    CHECK(cyclic_canonical(g, word_from_string("ab")) ==
          cyclic_canonical(g, word_from_string("ba")));
    Word a = word_from_string("a");
    CHECK(cyclic_canonical(g, a) == a);
    CHECK_THROWS(cyclic_canonical(g, Word{}));

    CounterRng rng(17, 0);
    for (int trial = 0; trial < 60; trial++) {
        Word w = random_reduced_word(rng, 1 + (int)rng.next_below(8));
        if (reduce(g, w).empty()) continue;
        Word u = random_reduced_word(rng, (int)rng.next_below(7));
        Word conj = concat(concat(u, w), inverse_word(u));
        CHECK(cyclic_canonical(g, w) == cyclic_canonical(g, conj));
    }
}

TEST_CASE("primitivity detection") {
    const auto& g = octagon();
    CHECK(is_primitive(g, word_from_string("a")));
    CHECK(!is_primitive(g, word_from_string("aa")));
    CHECK(!is_primitive(g, word_from_string("abab")));
    CHECK(is_primitive(g, cyclic_canonical(g, word_from_string("ab"))));
}

TEST_CASE("enumerate: empty below systole, systolic shell at the bottom") {
    const auto& g = octagon();
    auto empty = enumerate_primitives(g, 1.0);
    CHECK(empty.classes.empty());
    auto counts0 = count(empty, 1.0);
    CHECK(counts0.primitive == 0);
    CHECK(counts0.total == 0);

    double sys = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    auto shell = enumerate_primitives(g, sys + 0.01);
    REQUIRE(!shell.classes.empty());
    CHECK(shell.classes.size() % 2 == 0);
    for (const auto& c : shell.classes)
        CHECK(c.length == doctest::Approx(sys).epsilon(1e-9));
}

TEST_CASE("enumerate: table invariants at T=6") {
    const auto& g = octagon();
    auto table = enumerate_primitives(g, 6.0);
    REQUIRE(!table.classes.empty());

    size_t p0 = 0;
    for (size_t i = 0; i < table.classes.size(); i++) {
        const auto& c = table.classes[i];
        // stored length against the canonical word's matrix
        CHECK(std::fabs(translation_length(word_matrix(g, c.canonical_word)) -
                        c.length) < 1e-9);
        CHECK(c.primitive);
        // pairing involution without fixed points
        CHECK(c.inverse_pair != (int)i);
        CHECK(table.classes[c.inverse_pair].inverse_pair == (int)i);
        CHECK(table.classes[c.inverse_pair].length ==
              doctest::Approx(c.length).epsilon(1e-9));
        p0 += c.p0_representative ? 1 : 0;
        if (i > 0) {
            const auto& prev = table.classes[i - 1];
            bool ordered = prev.length < c.length ||
                           (prev.length == c.length &&
                            word_less(prev.canonical_word, c.canonical_word));
            CHECK(ordered);
        }
    }
    CHECK(2 * p0 == table.classes.size());

    // monotone counts and the N identity
    auto c4 = count(table, 4.0);
    auto c5 = count(table, 5.0);
    auto c6 = count(table, 6.0);
    CHECK(c4.primitive <= c5.primitive);
    CHECK(c5.primitive <= c6.primitive);
    CHECK(c6.total >= c6.primitive);
    // systole > 3 so no squares fit below 6; N(6) = N0(6)
    CHECK(c6.total == c6.primitive);
}

TEST_CASE("count identity with powers: N(T) = N0(T) + sum N0(T/k)") {
    const auto& g = octagon();
    auto table = enumerate_primitives(g, 6.5);
    auto c = count(table, 6.5);
    auto roots = count(table, 3.25);
    CHECK(roots.primitive > 0);  // squares of systolic classes fit under 6.5
    CHECK(c.total == c.primitive + roots.primitive);
}

TEST_CASE("same-length conjugates with no shared half-relator merge") {
    // regression: these are conjugate but related by no rotation/half-swap
    const auto& g = octagon();
    Word u = word_from_string("bdcDDC");
    Word v = word_from_string("abbABD");
    CHECK(cyclic_canonical(g, u) == cyclic_canonical(g, v));
}

TEST_CASE("enumerate: dual strategy agreement at T=6") {
    const auto& g = octagon();
    auto a = enumerate_primitives(g, 6.0);
    auto b = enumerate_primitives_dual(g, 6.0);
    REQUIRE(a.classes.size() == b.classes.size());
    for (size_t i = 0; i < a.classes.size(); i++) {
        CHECK(a.classes[i].canonical_word == b.classes[i].canonical_word);
        CHECK(a.classes[i].length ==
              doctest::Approx(b.classes[i].length).epsilon(1e-12));
        CHECK(a.classes[i].inverse_pair == b.classes[i].inverse_pair);
        CHECK(a.classes[i].p0_representative == b.classes[i].p0_representative);
    }
}

TEST_CASE("enumeration is worker-count invariant") {
    const auto& g = octagon();
    EnumerateOptions two;
    two.workers = 2;
    auto a = enumerate_primitives(g, 5.0);
    auto b = enumerate_primitives(g, 5.0, two);
    REQUIRE(a.classes.size() == b.classes.size());
    for (size_t i = 0; i < a.classes.size(); i++) {
        CHECK(a.classes[i].canonical_word == b.classes[i].canonical_word);
        CHECK(a.classes[i].length == b.classes[i].length);  // bit exact
    }
}

TEST_CASE("count guards") {
    const auto& g = octagon();
    auto table = enumerate_primitives(g, 4.0);
    CHECK_THROWS(count(table, 5.0));
}

TEST_CASE("conjugation_minimize agrees with cyclic_canonical") {
    const auto& g = octagon();
    CounterRng rng(23, 0);
    for (int trial = 0; trial < 25; trial++) {
        Word w = random_reduced_word(rng, 1 + (int)rng.next_below(6));
        if (reduce(g, w).empty()) continue;
        CHECK(conjugation_minimize(g, w, 4) == cyclic_canonical(g, w));
    }
}
