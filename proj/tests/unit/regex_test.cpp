#include <catch2/catch_amalgamated.hpp>

#include "sepa/errors.hpp"
#include "sepa/io.hpp"
#include "sepa/nfa.hpp"
#include "sepa/regex.hpp"
#include "testlib.hpp"

using namespace sepa;

TEST_CASE("position automaton shape") {
    const Nfa a = regex_to_nfa("(ab)*ac(a)+");
    // one state per literal occurrence plus the start state
    REQUIRE(a.num_states() == 6);
    REQUIRE(a.alphabet.names() == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(a.initial.size() == 1);
}

TEST_CASE("the running example equals its expression form") {
    const Nfa from_regex = regex_to_nfa("(ab)*ac(a)+");
    const Nfa a1 = testlib::example_a();
    REQUIRE(dfa_to_json(minimize(determinize(from_regex))) ==
            dfa_to_json(minimize(determinize(a1))));
    REQUIRE(enumerate(from_regex, 6) == enumerate(a1, 6));
}

TEST_CASE("operator semantics") {
    const Alphabet ab = testlib::abc(2);

    const Nfa alt = regex_to_nfa("a|b");
    REQUIRE(accepts(alt, word_from_chars(alt.alphabet, "a")));
    REQUIRE(accepts(alt, word_from_chars(alt.alphabet, "b")));
    REQUIRE_FALSE(accepts(alt, word_from_chars(alt.alphabet, "ab")));
    REQUIRE_FALSE(accepts(alt, {}));

    const Nfa star = regex_to_nfa("a*");
    REQUIRE(accepts(star, {}));
    REQUIRE(accepts(star, Word{0, 0, 0}));

    const Nfa plus = regex_to_nfa("a+");
    REQUIRE_FALSE(accepts(plus, {}));
    REQUIRE(accepts(plus, Word{0}));
    REQUIRE(accepts(plus, Word{0, 0}));

    const Nfa eps = regex_to_nfa("()");
    REQUIRE(accepts(eps, {}));
    REQUIRE(enumerate(eps, 3) == std::vector<Word>{{}});

    const Nfa mix = regex_to_nfa("(a|b)*b");
    for (const auto& w : testlib::all_words(2, 6)) {
        REQUIRE(accepts(with_alphabet(mix, ab), w) == (!w.empty() && w.back() == 1));
    }
}

TEST_CASE("regex languages match brute enumeration") {
    const Nfa a = regex_to_nfa("(ab|ba)*c+");
    const Alphabet& al = a.alphabet;
    auto member = [&](const Word& w) {
        // (ab|ba)* prefix then nonempty c suffix, checked directly
        std::size_t i = w.size();
        while (i > 0 && al.name(w[i - 1]) == "c") --i;
        if (i == w.size()) return false;
        if (i % 2 != 0) return false;
        for (std::size_t j = 0; j < i; j += 2) {
            const bool ab = al.name(w[j]) == "a" && al.name(w[j + 1]) == "b";
            const bool ba = al.name(w[j]) == "b" && al.name(w[j + 1]) == "a";
            if (!ab && !ba) return false;
        }
        return true;
    };
    for (const auto& w : testlib::all_words(al.size(), 6)) {
        REQUIRE(accepts(a, w) == member(w));
    }
}

TEST_CASE("parse errors carry byte offsets") {
    auto position_of = [](std::string_view text) {
        try {
            regex_to_nfa(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position);
        }
        return -1L;
    };
    REQUIRE(position_of("") == 0);
    REQUIRE(position_of("(a") == 0);
    REQUIRE(position_of("a)") == 1);
    REQUIRE(position_of("|a") == 0);
    REQUIRE(position_of("a|") == 2);
    REQUIRE(position_of("a(") == 2);
    REQUIRE(position_of("ab") == -1);
}
