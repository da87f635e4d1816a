#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include <catch2/catch_amalgamated.hpp>

#include "sepa/bigint.hpp"
#include "sepa/errors.hpp"
#include "sepa/nfa.hpp"
#include "sepa/pieces.hpp"
#include "sepa/pt.hpp"
#include "testlib.hpp"

using namespace sepa;

namespace {

SymSet names_to_set(const std::vector<std::string>& names, const Alphabet& alphabet) {
    SymSet out(alphabet.size());
    for (const auto& n : names) out.insert(*alphabet.find(n));
    return out;
}

}  // namespace

TEST_CASE("max common loop alphabet on the running examples") {
    const Nfa a1 = testlib::example_a();
    const Nfa a2 = testlib::example_b();

    const auto top = max_common_loop_alphabet(a1, 0, a2, 0);
    REQUIRE(top.has_value());
    REQUIRE(*top == std::vector<std::string>{"a", "b"});

    const auto tail = max_common_loop_alphabet(a1, 2, a2, 3);
    REQUIRE(tail.has_value());
    REQUIRE(*tail == std::vector<std::string>{"a"});

    // q3 carries no loop at all
    REQUIRE_FALSE(max_common_loop_alphabet(a1, 3, a2, 3).has_value());
    REQUIRE_FALSE(max_common_loop_alphabet(testlib::astar(), 0, testlib::bbstar(), 1).has_value());

    REQUIRE_THROWS_AS(max_common_loop_alphabet(a1, 99, a2, 0), UnknownStateError);
}

TEST_CASE("max common loop alphabet matches the subset oracle") {
    std::mt19937_64 g(31);
    for (int i = 0; i < 60; ++i) {
        const Nfa x = testlib::random_nfa(g, 4, 3, 3);
        const Nfa y = testlib::random_nfa(g, 4, 3, 3);
        for (StateId q1 = 0; q1 < x.num_states(); ++q1) {
            for (StateId q2 = 0; q2 < y.num_states(); ++q2) {
                const auto got = max_common_loop_alphabet(x, q1, y, q2);
                const auto want = testlib::brute_common_loop_alphabet(x, q1, y, q2);
                REQUIRE(got.has_value() == want.has_value());
                if (got) {
                    REQUIRE(names_to_set(*got, x.alphabet) == *want);
                    // the union of realizable sets is itself realizable
                    REQUIRE(testlib::loop_alphabet_realizable(x, q1, *want));
                    REQUIRE(testlib::loop_alphabet_realizable(y, q2, *want));
                }
            }
        }
    }
}

TEST_CASE("summary automata record common loops as fresh letters") {
    const Nfa a1 = testlib::example_a();
    const Nfa a2 = testlib::example_b();
    const SummaryAutomata s = build_summary_automata(a1, a2);

    REQUIRE_FALSE(s.table.empty());
    REQUIRE(s.a1_ext.alphabet.size() == 3 + static_cast<int>(s.table.size()));
    REQUIRE(s.a2_ext.alphabet.size() == s.a1_ext.alphabet.size());

    std::set<std::string> fresh;
    for (const auto& e : s.table) {
        REQUIRE(fresh.insert(e.symbol).second);
        REQUIRE(s.a1_ext.alphabet.find(e.symbol).has_value());
        REQUIRE(s.a2_ext.alphabet.find(e.symbol).has_value());
        REQUIRE_FALSE(e.loop_alphabet.empty());
        const auto common = max_common_loop_alphabet(a1, e.loop1, a2, e.loop2);
        REQUIRE(common.has_value());
        // the recorded loop alphabet is a loop alphabet both anchors realize
        const SymSet joint = names_to_set(e.loop_alphabet, a1.alphabet);
        REQUIRE(testlib::loop_alphabet_realizable(a1, e.loop1, joint));
        REQUIRE(testlib::loop_alphabet_realizable(a2, e.loop2, joint));
    }
}

TEST_CASE("the running examples are not separable and yield the canonical witness") {
    const Nfa a1 = testlib::example_a();
    const Nfa a2 = testlib::example_b();
    const PtVerdict v = decide_pt_separable(a1, a2);

    REQUIRE_FALSE(v.separable);
    REQUIRE(v.witness.has_value());
    const Witness& w = *v.witness;
    REQUIRE(w.alphabet.names() == std::vector<std::string>{"a", "b", "c"});

    REQUIRE(w.pair.u == std::vector<Word>{{}, {2}, {}});
    REQUIRE(w.pair.b == std::vector<SymSet>{SymSet::of(3, {0, 1}), SymSet::of(3, {0})});

    REQUIRE(verify_witness(w, a1, a2));
    REQUIRE_FALSE(verify_witness(w, a2, a1));
}

TEST_CASE("tampered witnesses fail verification") {
    const Nfa a1 = testlib::example_a();
    const Nfa a2 = testlib::example_b();
    const Witness good = *decide_pt_separable(a1, a2).witness;

    Witness broken = good;
    broken.pair.u[1] = Word{0};
    REQUIRE_FALSE(verify_witness(broken, a1, a2));

    broken = good;
    broken.pair.b[1] = SymSet::of(3, {0, 2});
    REQUIRE_FALSE(verify_witness(broken, a1, a2));

    broken = good;
    broken.side1.u_runs.back().states.back() = 0;
    REQUIRE_FALSE(verify_witness(broken, a1, a2));

    broken = good;
    REQUIRE_FALSE(broken.side2.blocks.empty());
    broken.side2.blocks[0].loop.labels.push_back(2);
    REQUIRE_FALSE(verify_witness(broken, a1, a2));
}

TEST_CASE("separable pairs get no witness") {
    const PtVerdict v = decide_pt_separable(testlib::astar(), testlib::bbstar());
    REQUIRE(v.separable);
    REQUIRE_FALSE(v.witness.has_value());
}

TEST_CASE("empty languages are separable from everything") {
    REQUIRE(decide_pt_separable(testlib::empty_lang(1), testlib::astar()).separable);
    REQUIRE(decide_pt_separable(testlib::astar(), testlib::empty_lang(1)).separable);
    REQUIRE(decide_pt_separable(testlib::empty_lang(2), testlib::empty_lang(2)).separable);
}

TEST_CASE("a language is never separable from itself when nonempty") {
    const PtVerdict v = decide_pt_separable(testlib::astar(), testlib::astar());
    REQUIRE_FALSE(v.separable);
    REQUIRE(verify_witness(*v.witness, testlib::astar(), testlib::astar()));
}

TEST_CASE("pumping the canonical witness") {
    const Nfa a1 = testlib::example_a();
    const Nfa a2 = testlib::example_b();
    const Witness w = *decide_pt_separable(a1, a2).witness;

    const auto [w1, w2] = pump_witness(w, 1);
    REQUIRE(w1 == word_from_chars(w.alphabet, "abacaa"));
    REQUIRE(w2 == word_from_chars(w.alphabet, "babbca"));

    for (int kappa = 1; kappa <= 4; ++kappa) {
        const auto [u1, u2] = pump_witness(w, kappa);
        REQUIRE(accepts(with_alphabet(a1, w.alphabet), u1));
        REQUIRE(accepts(with_alphabet(a2, w.alphabet), u2));
        REQUIRE(kpeq(u1, u2, kappa));
    }
}

TEST_CASE("pumping rejects a structurally broken witness") {
    Witness w = *decide_pt_separable(testlib::example_a(), testlib::example_b()).witness;
    w.pair.u.pop_back();
    REQUIRE_THROWS_AS(pump_witness(w, 1), InvalidWitnessError);
}

TEST_CASE("decision agrees with abstraction disjointness on random pairs") {
    std::mt19937_64 g(32);
    int not_separable = 0;
    for (int i = 0; i < 60; ++i) {
        const Nfa x = testlib::random_nfa(g);
        const Nfa y = testlib::random_nfa(g);
        const PtVerdict v = decide_pt_separable(x, y);
        REQUIRE(v.separable == decide_pt_separable(y, x).separable);
        REQUIRE(v.separable != v.witness.has_value());

        if (!v.separable) {
            ++not_separable;
            REQUIRE(verify_witness(*v.witness, x, y));
            const auto [u1, u2] = pump_witness(*v.witness, 2);
            REQUIRE(accepts(with_alphabet(x, v.witness->alphabet), u1));
            REQUIRE(accepts(with_alphabet(y, v.witness->alphabet), u2));
            REQUIRE(kpeq(u1, u2, 2));
            // no level can separate a pair with a verified witness
            for (int kappa = 0; kappa <= 3; ++kappa) {
                REQUIRE_FALSE(pt_separable_at(x, y, kappa));
            }
        } else {
            const auto k = min_kappa(x, y, 3);
            if (k) {
                const auto sep = separator_dfa(x, *k);
                REQUIRE(is_empty(product(x, to_nfa(complement(sep.dfa)))));
                REQUIRE(is_empty(product(y, to_nfa(sep.dfa))));
            }
        }
    }
    // the stream must exercise both outcomes to mean anything
    REQUIRE(not_separable > 5);
    REQUIRE(not_separable < 55);
}

TEST_CASE("witnesses use loop alphabets both sides realize") {
    std::mt19937_64 g(33);
    for (int i = 0; i < 40; ++i) {
        const Nfa x = testlib::random_nfa(g, 4, 2, 2);
        const Nfa y = testlib::random_nfa(g, 4, 2, 2);
        const PtVerdict v = decide_pt_separable(x, y);
        if (v.separable) continue;
        const Witness& w = *v.witness;
        REQUIRE(w.pair.u.size() == w.pair.b.size() + 1);
        REQUIRE(w.side1.u_runs.size() == w.pair.u.size());
        REQUIRE(w.side2.blocks.size() == w.pair.b.size());
        for (std::size_t j = 0; j < w.pair.b.size(); ++j) {
            REQUIRE_FALSE(w.pair.b[j].empty());
            REQUIRE(testlib::loop_alphabet_realizable(x, w.side1.blocks[j].anchor(), w.pair.b[j]));
            REQUIRE(testlib::loop_alphabet_realizable(y, w.side2.blocks[j].anchor(), w.pair.b[j]));
        }
    }
}

TEST_CASE("saturation bound values") {
    REQUIRE(kappa_bound(1, 1, 1) == 128);
    REQUIRE(kappa_bound(1, 2, 1) == 768);
    REQUIRE(kappa_bound(2, 1, 1) == 768);
    REQUIRE(kappa_bound(4, 4, 3) == BigInt(15) << 384);
    REQUIRE(kappa_bound(1, 1, 4) == BigInt(8) << 576);
}

TEST_CASE("saturation bound overflows loudly") {
    REQUIRE_THROWS_AS(kappa_bound(2, 2, 27), std::overflow_error);
    REQUIRE_THROWS_AS(kappa_bound(1000, 1000, 64), std::overflow_error);
}
