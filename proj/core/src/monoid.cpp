#include "sepa/monoid.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "sepa/errors.hpp"

#include "json.hpp"

namespace sepa {

namespace {

std::vector<StateId> compose(const std::vector<StateId>& first,
                             const std::vector<StateId>& second) {
    std::vector<StateId> out(first.size());
    for (std::size_t q = 0; q < first.size(); ++q) {
        out[q] = second[static_cast<std::size_t>(first[q])];
    }
    return out;
}

}  // namespace

FiniteMonoid transition_monoid(const Dfa& d) {
    const int n = d.num_states();
    if (!d.complete || n == 0) throw IncompleteDfaError("transition monoid needs a complete dfa");
    for (const auto& row : d.next) {
        for (StateId t : row) {
            if (t < 0 || t >= n) throw IncompleteDfaError("transition monoid needs a complete dfa");
        }
    }
    constexpr int kMaxElements = 100000;

    FiniteMonoid m;
    m.alphabet = d.alphabet;

    std::map<std::vector<StateId>, int> ids;
    auto intern = [&](std::vector<StateId> f) {
        auto it = ids.find(f);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(m.elements.size());
        if (id >= kMaxElements) {
            throw MonoidTooLargeError("transition monoid exceeds 100000 elements");
        }
        ids.emplace(f, id);
        m.elements.push_back(std::move(f));
        return id;
    };

    std::vector<StateId> ident(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) ident[static_cast<std::size_t>(q)] = q;
    m.identity = intern(std::move(ident));

    std::vector<std::vector<StateId>> gens;
    for (int s = 0; s < d.alphabet.size(); ++s) {
        std::vector<StateId> f(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) {
            f[static_cast<std::size_t>(q)] =
                d.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
        }
        gens.push_back(f);
        m.letter_image.push_back(intern(std::move(f)));
    }

    // breadth-first closure under right multiplication by generators; ids
    // come out in a canonical order independent of hashing
    for (std::size_t x = 0; x < m.elements.size(); ++x) {
        for (const auto& g : gens) {
            intern(compose(m.elements[x], g));
        }
    }

    const int size = static_cast<int>(m.elements.size());
    m.table.assign(static_cast<std::size_t>(size), std::vector<int>(static_cast<std::size_t>(size), 0));
    for (int x = 0; x < size; ++x) {
        for (int y = 0; y < size; ++y) {
            auto it = ids.find(compose(m.elements[static_cast<std::size_t>(x)],
                                       m.elements[static_cast<std::size_t>(y)]));
            if (it == ids.end()) throw Error("internal: monoid not closed under composition");
            m.table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = it->second;
        }
    }

    std::vector<char> is_final(static_cast<std::size_t>(n), 0);
    for (StateId q : d.final) is_final[static_cast<std::size_t>(q)] = 1;
    for (int x = 0; x < size; ++x) {
        StateId moved = m.elements[static_cast<std::size_t>(x)][static_cast<std::size_t>(d.initial)];
        if (is_final[static_cast<std::size_t>(moved)]) m.accepting.push_back(x);
    }
    return m;
}

int evaluate(const FiniteMonoid& m, const Word& w) {
    int acc = m.identity;
    for (SymbolId s : w) {
        if (s < 0 || s >= static_cast<SymbolId>(m.letter_image.size())) {
            throw UnknownSymbolError("symbol id " + std::to_string(s));
        }
        acc = m.mult(acc, m.letter_image[static_cast<std::size_t>(s)]);
    }
    return acc;
}

BigInt ul_kappa_bound(long m1, long m2, long alphabet_size) {
    BigInt products = 2 * BigInt(m1) * BigInt(m2) + 1;
    BigInt width = BigInt(alphabet_size) + 1;
    return products * width * width;
}

std::string monoid_to_json(const FiniteMonoid& m) {
    nlohmann::ordered_json j;
    j["size"] = m.size();
    j["identity"] = m.identity;
    j["elements"] = m.elements;
    j["table"] = m.table;
    nlohmann::ordered_json letters = nlohmann::ordered_json::object();
    for (int s = 0; s < m.alphabet.size(); ++s) {
        letters[m.alphabet.name(s)] = m.letter_image[static_cast<std::size_t>(s)];
    }
    j["letters"] = letters;
    j["accepting"] = m.accepting;
    return j.dump(2);
}

}  // namespace sepa
