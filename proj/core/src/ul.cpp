#include "sepa/ul.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "sepa/monoid.hpp"

namespace sepa {

namespace {

SymSet set_from_mask(std::uint64_t mask, int universe) {
    SymSet s(universe);
    for (int b = 0; b < universe; ++b) {
        if (mask >> b & 1u) s.insert(b);
    }
    return s;
}

// One subset-simulation step of the parser; bit x of the mask is state x.
std::uint64_t step_parser(const UnambiguousProduct& p, std::uint64_t mask, SymbolId s) {
    const int k = p.size();
    std::uint64_t out = 0;
    for (int x = 0; x <= k; ++x) {
        if (!(mask >> x & 1u)) continue;
        if (p.sets[static_cast<std::size_t>(x)].contains(s)) out |= std::uint64_t{1} << x;
        if (x < k && p.letters[static_cast<std::size_t>(x)] == s) {
            out |= std::uint64_t{1} << (x + 1);
        }
    }
    return out;
}

bool parser_accepts(const UnambiguousProduct& p, std::uint64_t mask) {
    return mask >> p.size() & 1u;
}

}  // namespace

Nfa product_to_nfa(const UnambiguousProduct& p, const Alphabet& alphabet) {
    const int k = p.size();
    if (p.sets.size() != static_cast<std::size_t>(k) + 1) {
        throw Error("product needs exactly k+1 sets");
    }
    if (alphabet.size() != p.sets.front().universe()) {
        throw Error("product universe does not match the alphabet size");
    }
    Nfa a;
    a.alphabet = alphabet;
    for (int i = 0; i <= k; ++i) a.state_names.push_back("p" + std::to_string(i));
    a.initial = {0};
    a.final = {k};
    for (int i = 0; i <= k; ++i) {
        for (SymbolId s : p.sets[static_cast<std::size_t>(i)].elements()) {
            a.transitions.push_back({i, s, i});
        }
        if (i < k) a.transitions.push_back({i, p.letters[static_cast<std::size_t>(i)], i + 1});
    }
    std::sort(a.transitions.begin(), a.transitions.end());
    a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()),
                        a.transitions.end());
    return a;
}

bool is_unambiguous_product(const UnambiguousProduct& p) {
    const int k = p.size();
    if (p.sets.size() != static_cast<std::size_t>(k) + 1) {
        throw Error("product needs exactly k+1 sets");
    }
    const int n = k + 1;
    const int a = p.sets.front().universe();

    auto moves = [&](int x, SymbolId s, int out[2]) {
        int c = 0;
        if (p.sets[static_cast<std::size_t>(x)].contains(s)) out[c++] = x;
        if (x < k && p.letters[static_cast<std::size_t>(x)] == s) out[c++] = x + 1;
        return c;
    };

    // full pair graph of the parser with itself, synchronized on letters
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n * n));
    std::vector<std::vector<int>> radj(static_cast<std::size_t>(n * n));
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            const int from = x * n + y;
            for (SymbolId s = 0; s < a; ++s) {
                int mx[2];
                int my[2];
                const int cx = moves(x, s, mx);
                const int cy = moves(y, s, my);
                for (int i = 0; i < cx; ++i) {
                    for (int j = 0; j < cy; ++j) {
                        const int to = mx[i] * n + my[j];
                        adj[static_cast<std::size_t>(from)].push_back(to);
                        radj[static_cast<std::size_t>(to)].push_back(from);
                    }
                }
            }
        }
    }

    auto closure = [&](int start, const std::vector<std::vector<int>>& edges) {
        std::vector<char> seen(static_cast<std::size_t>(n * n), 0);
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : edges[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    };

    const auto fwd = closure(0, adj);
    const auto bwd = closure(k * n + k, radj);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y && fwd[static_cast<std::size_t>(x * n + y)] &&
                bwd[static_cast<std::size_t>(x * n + y)]) {
                return false;
            }
        }
    }
    return true;
}

std::vector<UnambiguousProduct> enumerate_unambiguous_products(int alphabet_size,
                                                               int kappa,
                                                               long long budget) {
    // raw candidate count: sum over k <= kappa of 2^a * (a * 2^a)^k
    const BigInt sets_per = BigInt(1) << alphabet_size;
    BigInt per_k = sets_per;
    BigInt total = 0;
    for (int k = 0; k <= kappa; ++k) {
        total += per_k;
        per_k *= alphabet_size * sets_per;
    }
    if (total > budget) {
        long long reached = total > BigInt(std::numeric_limits<long long>::max())
                                ? std::numeric_limits<long long>::max()
                                : static_cast<long long>(total);
        throw BudgetExceededError("unambiguous product enumeration needs " +
                                      total.str() + " candidates",
                                  reached);
    }

    // the budget check bounds alphabet_size and kappa well below 63, so
    // single-word masks cover both set digits and parser subsets
    std::vector<UnambiguousProduct> out;
    const std::uint64_t set_radix = std::uint64_t{1} << alphabet_size;
    for (int k = 0; k <= kappa; ++k) {
        if (k > 0 && alphabet_size == 0) break;
        std::vector<std::uint64_t> set_digits(static_cast<std::size_t>(k) + 1, 0);
        Word letter_digits(static_cast<std::size_t>(k), 0);
        while (true) {
            UnambiguousProduct p;
            for (std::uint64_t m : set_digits) p.sets.push_back(set_from_mask(m, alphabet_size));
            p.letters = letter_digits;
            if (is_unambiguous_product(p)) out.push_back(std::move(p));

            // odometer over the tuple (B0, a1, B1, ..., ak, Bk), rightmost fastest
            int j = 2 * k;
            while (j >= 0) {
                if (j % 2 == 0) {
                    auto& d = set_digits[static_cast<std::size_t>(j / 2)];
                    if (++d < set_radix) break;
                    d = 0;
                } else {
                    auto& d = letter_digits[static_cast<std::size_t>((j - 1) / 2)];
                    if (++d < alphabet_size) break;
                    d = 0;
                }
                --j;
            }
            if (j < 0) break;
        }
    }
    return out;
}

UlAbstraction ul_abstraction(const Word& w, int alphabet_size, int kappa,
                             long long budget) {
    for (SymbolId s : w) {
        if (s < 0 || s >= alphabet_size) {
            throw UnknownSymbolError("symbol id " + std::to_string(s));
        }
    }
    const auto products = enumerate_unambiguous_products(alphabet_size, kappa, budget);
    UlAbstraction abs;
    abs.kappa = kappa;
    abs.bits.reserve(products.size());
    for (const auto& p : products) {
        std::uint64_t mask = 1;
        for (SymbolId s : w) mask = step_parser(p, mask, s);
        abs.bits.push_back(parser_accepts(p, mask) ? 1 : 0);
    }
    return abs;
}

bool ul_eq(const Word& w1, const Word& w2, int alphabet_size, int kappa,
           long long budget) {
    return ul_abstraction(w1, alphabet_size, kappa, budget) ==
           ul_abstraction(w2, alphabet_size, kappa, budget);
}

namespace {

// All abstraction vectors realized by the language: breadth-first search
// over (nfa state, one parser subset per product), counted against budget.
std::set<std::vector<char>> abstraction_image(const Nfa& a,
                                              const std::vector<UnambiguousProduct>& products,
                                              long long budget) {
    const int nsym = a.alphabet.size();
    const std::size_t m = products.size();

    std::vector<std::vector<std::vector<StateId>>> succ(
        static_cast<std::size_t>(a.num_states()),
        std::vector<std::vector<StateId>>(static_cast<std::size_t>(nsym)));
    for (const auto& t : a.transitions) {
        succ[static_cast<std::size_t>(t.from)][static_cast<std::size_t>(t.symbol)]
            .push_back(t.to);
    }

    std::set<std::vector<char>> image;
    std::set<std::vector<std::uint64_t>> seen;
    std::deque<std::vector<std::uint64_t>> queue;
    long long visited = 0;

    auto offer = [&](std::vector<std::uint64_t> cfg) {
        auto [it, inserted] = seen.insert(std::move(cfg));
        if (!inserted) return;
        if (++visited > budget) {
            throw BudgetExceededError("ul abstraction search exceeded budget", visited);
        }
        queue.push_back(*it);
    };

    for (StateId q : a.initial) {
        std::vector<std::uint64_t> cfg(m + 1, 1);
        cfg[0] = static_cast<std::uint64_t>(q);
        offer(std::move(cfg));
    }

    while (!queue.empty()) {
        const auto cfg = queue.front();
        queue.pop_front();
        const StateId q = static_cast<StateId>(cfg[0]);

        if (a.is_final(q)) {
            std::vector<char> bits(m, 0);
            for (std::size_t i = 0; i < m; ++i) {
                bits[i] = parser_accepts(products[i], cfg[i + 1]) ? 1 : 0;
            }
            image.insert(std::move(bits));
        }

        for (SymbolId s = 0; s < nsym; ++s) {
            const auto& targets = succ[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (targets.empty()) continue;
            std::vector<std::uint64_t> stepped(m + 1, 0);
            for (std::size_t i = 0; i < m; ++i) {
                stepped[i + 1] = step_parser(products[i], cfg[i + 1], s);
            }
            for (StateId t : targets) {
                auto next = stepped;
                next[0] = static_cast<std::uint64_t>(t);
                offer(std::move(next));
            }
        }
    }
    return image;
}

}  // namespace

bool ul_separable_at(const Nfa& a1, const Nfa& a2, int kappa, long long budget) {
    const Alphabet joint = join_alphabets(a1.alphabet, a2.alphabet);
    const Nfa b1 = with_alphabet(a1, joint);
    const Nfa b2 = with_alphabet(a2, joint);
    const auto products = enumerate_unambiguous_products(joint.size(), kappa, budget);
    const auto image1 = abstraction_image(b1, products, budget);
    const auto image2 = abstraction_image(b2, products, budget);
    for (const auto& bits : image1) {
        if (image2.count(bits)) return false;
    }
    return true;
}

UlVerdict decide_ul_separable(const Nfa& a1, const Nfa& a2, int kappa_max,
                              long long budget) {
    const Alphabet joint = join_alphabets(a1.alphabet, a2.alphabet);
    const Nfa b1 = with_alphabet(a1, joint);
    const Nfa b2 = with_alphabet(a2, joint);

    UlVerdict verdict;
    verdict.m1 = transition_monoid(minimize(determinize(b1))).size();
    verdict.m2 = transition_monoid(minimize(determinize(b2))).size();
    verdict.kappa_bound = ul_kappa_bound(verdict.m1, verdict.m2, joint.size());

    for (int kappa = 0; kappa <= kappa_max; ++kappa) {
        if (ul_separable_at(b1, b2, kappa, budget)) {
            verdict.status = UlStatus::separable_at;
            verdict.kappa = kappa;
            return verdict;
        }
    }
    verdict.kappa = kappa_max;
    verdict.status = BigInt(kappa_max) >= verdict.kappa_bound
                         ? UlStatus::definitive_not_separable
                         : UlStatus::not_separable_up_to;
    return verdict;
}

bool admits_h_decomposition(const Word& w, long h, const std::vector<SymbolId>& order) {
    // greedy cyclic rounds of the order through w, as in pattern_power
    if (order.empty()) return h == 0;
    for (SymbolId s : w) {
        if (std::find(order.begin(), order.end(), s) == order.end()) return h == 0;
    }
    long rounds = 0;
    std::size_t pos = 0;
    while (true) {
        std::size_t scan = pos;
        bool complete = true;
        for (SymbolId target : order) {
            while (scan < w.size() && w[scan] != target) ++scan;
            if (scan == w.size()) {
                complete = false;
                break;
            }
            ++scan;
        }
        if (!complete) break;
        pos = scan;
        ++rounds;
    }
    return rounds == h;
}

}  // namespace sepa
