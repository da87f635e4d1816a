#include <algorithm>
#include <random>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "sepa/errors.hpp"
#include "sepa/monoid.hpp"
#include "sepa/nfa.hpp"
#include "sepa/regex.hpp"
#include "testlib.hpp"

using namespace sepa;

namespace {

Dfa recognizer(const Nfa& a) { return minimize(determinize(a)); }

bool recognized(const FiniteMonoid& m, const Word& w) {
    return std::binary_search(m.accepting.begin(), m.accepting.end(), evaluate(m, w));
}

}  // namespace

TEST_CASE("closure sizes of the reference languages") {
    const Dfa one_letter = recognizer(testlib::astar());
    REQUIRE(transition_monoid(one_letter).size() == 1);

    const Dfa padded = recognizer(with_alphabet(testlib::astar(), testlib::abc(2)));
    const FiniteMonoid m = transition_monoid(padded);
    REQUIRE(m.size() == 2);
    REQUIRE(m.accepting == std::vector<int>{m.identity});

    REQUIRE(transition_monoid(recognizer(regex_to_nfa("(ab)*"))).size() == 6);
    REQUIRE(transition_monoid(recognizer(regex_to_nfa("(a|b)*b"))).size() == 3);
}

TEST_CASE("monoid laws hold on the composition table") {
    const FiniteMonoid m = transition_monoid(recognizer(regex_to_nfa("(ab)*")));
    for (int x = 0; x < m.size(); ++x) {
        REQUIRE(m.mult(m.identity, x) == x);
        REQUIRE(m.mult(x, m.identity) == x);
        for (int y = 0; y < m.size(); ++y) {
            for (int z = 0; z < m.size(); ++z) {
                REQUIRE(m.mult(m.mult(x, y), z) == m.mult(x, m.mult(y, z)));
            }
        }
    }
}

TEST_CASE("letter images act like the transition table") {
    const Dfa d = recognizer(testlib::example_a());
    const FiniteMonoid m = transition_monoid(d);
    REQUIRE(m.letter_image.size() == static_cast<std::size_t>(d.alphabet.size()));
    for (int s = 0; s < d.alphabet.size(); ++s) {
        const auto& f = m.elements[static_cast<std::size_t>(m.letter_image[static_cast<std::size_t>(s)])];
        for (int q = 0; q < d.num_states(); ++q) {
            REQUIRE(f[static_cast<std::size_t>(q)] ==
                    d.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]);
        }
        REQUIRE(evaluate(m, Word{s}) == m.letter_image[static_cast<std::size_t>(s)]);
    }
    REQUIRE(evaluate(m, {}) == m.identity);
    REQUIRE_THROWS_AS(evaluate(m, Word{9}), UnknownSymbolError);
}

TEST_CASE("evaluation is a morphism") {
    const FiniteMonoid m = transition_monoid(recognizer(testlib::example_b()));
    const auto words = testlib::all_words(3, 3);
    for (const auto& u : words) {
        for (const auto& v : words) {
            Word uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            REQUIRE(evaluate(m, uv) == m.mult(evaluate(m, u), evaluate(m, v)));
        }
    }
}

TEST_CASE("the accepting set recognizes the language") {
    for (const char* pattern : {"(ab)*", "(a|b)*b", "a*", "(ab)*ac(a)+"}) {
        const Nfa a = regex_to_nfa(pattern);
        const Dfa d = recognizer(a);
        const FiniteMonoid m = transition_monoid(d);
        const Nfa lang = to_nfa(d);
        for (const auto& w : testlib::all_words(d.alphabet.size(), 8)) {
            REQUIRE(recognized(m, w) == accepts(lang, w));
        }
    }
}

TEST_CASE("closure size matches the naive oracle") {
    std::mt19937_64 g(41);
    for (int i = 0; i < 40; ++i) {
        const Dfa d = recognizer(testlib::random_nfa(g));
        REQUIRE(transition_monoid(d).size() == testlib::brute_monoid_size(d));
    }
}

TEST_CASE("incomplete tables are rejected") {
    Dfa d;
    d.alphabet = testlib::abc(1);
    d.state_names = {"x"};
    d.initial = 0;
    d.next = {{kNoState}};
    d.complete = false;
    REQUIRE_THROWS_AS(transition_monoid(d), IncompleteDfaError);

    d.next = {{0}};
    d.complete = true;
    REQUIRE(transition_monoid(d).size() == 1);
}

TEST_CASE("oversized closures are rejected") {
    // cycle, transposition and a collapse generate all 8^8 transformations
    Dfa d;
    d.alphabet = testlib::abc(3);
    for (int q = 0; q < 8; ++q) d.state_names.push_back("m" + std::to_string(q));
    d.initial = 0;
    d.final = {0};
    d.next.assign(8, std::vector<StateId>(3));
    for (int q = 0; q < 8; ++q) {
        d.next[static_cast<std::size_t>(q)][0] = (q + 1) % 8;
        d.next[static_cast<std::size_t>(q)][1] = q == 0 ? 1 : (q == 1 ? 0 : q);
        d.next[static_cast<std::size_t>(q)][2] = q == 0 ? 1 : q;
    }
    d.complete = true;
    REQUIRE_THROWS_AS(transition_monoid(d), MonoidTooLargeError);
}

TEST_CASE("product separability bound values") {
    REQUIRE(ul_kappa_bound(1, 1, 1) == 12);
    REQUIRE(ul_kappa_bound(2, 3, 2) == 117);
    REQUIRE(ul_kappa_bound(3, 2, 2) == 117);
    REQUIRE(ul_kappa_bound(6, 6, 2) == 657);
}

TEST_CASE("monoid serialization") {
    const FiniteMonoid m = transition_monoid(recognizer(regex_to_nfa("(ab)*")));
    const auto doc = nlohmann::json::parse(monoid_to_json(m));
    REQUIRE(doc["size"] == m.size());
    REQUIRE(doc["identity"] == m.identity);
    REQUIRE(doc["elements"].size() == static_cast<std::size_t>(m.size()));
    REQUIRE(doc["table"].size() == static_cast<std::size_t>(m.size()));
    REQUIRE(doc["letters"].size() == 2);
    REQUIRE(doc["letters"]["a"] == m.letter_image[0]);
    REQUIRE(doc["accepting"].get<std::vector<int>>() == m.accepting);
}
