#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "sepa/monoid.hpp"
#include "sepa/nfa.hpp"
#include "sepa/pieces.hpp"
#include "sepa/pt.hpp"

namespace {

sepa::Nfa random_nfa(std::mt19937_64& g, int states, int symbols) {
    sepa::Nfa a;
    std::vector<std::string> names;
    for (int s = 0; s < symbols; ++s) names.push_back(std::string(1, static_cast<char>('a' + s)));
    a.alphabet = sepa::Alphabet(names);
    for (int q = 0; q < states; ++q) a.state_names.push_back("s" + std::to_string(q));
    for (int q = 0; q < states; ++q) {
        for (int s = 0; s < symbols; ++s) {
            for (int t = 0; t < states; ++t) {
                if (g() % 3 == 0) a.transitions.push_back({q, s, t});
            }
        }
    }
    a.initial = {0};
    a.final = {states - 1};
    return a;
}

sepa::Word random_word(std::mt19937_64& g, int length, int symbols) {
    sepa::Word w;
    for (int i = 0; i < length; ++i) w.push_back(static_cast<int>(g() % symbols));
    return w;
}

void BM_decide_pt_separable(benchmark::State& state) {
    std::mt19937_64 g(7);
    const int n = static_cast<int>(state.range(0));
    const sepa::Nfa a1 = random_nfa(g, n, 10);
    const sepa::Nfa a2 = random_nfa(g, n, 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sepa::decide_pt_separable(a1, a2));
    }
}
BENCHMARK(BM_decide_pt_separable)->Arg(10)->Arg(25)->Arg(50);

void BM_abstraction_set(benchmark::State& state) {
    std::mt19937_64 g(11);
    const sepa::Nfa a = random_nfa(g, 4, 3);
    const int kappa = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sepa::abstraction_set(a, kappa));
    }
}
BENCHMARK(BM_abstraction_set)->Arg(2)->Arg(3);

void BM_pieces_up_to(benchmark::State& state) {
    std::mt19937_64 g(13);
    const sepa::Word w = random_word(g, static_cast<int>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sepa::pieces_up_to(w, 4));
    }
}
BENCHMARK(BM_pieces_up_to)->Arg(16)->Arg(64)->Arg(256);

void BM_transition_monoid(benchmark::State& state) {
    std::mt19937_64 g(17);
    const sepa::Nfa a = random_nfa(g, static_cast<int>(state.range(0)), 3);
    const sepa::Dfa d = sepa::minimize(sepa::determinize(a));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sepa::transition_monoid(d));
    }
}
BENCHMARK(BM_transition_monoid)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
