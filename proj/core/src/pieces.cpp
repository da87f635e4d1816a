#include "sepa/pieces.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace sepa {

namespace {

std::size_t hash_words(int kappa, const std::vector<Word>& words) {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::size_t>(kappa));
    for (const auto& w : words) {
        mix(w.size());
        for (SymbolId s : w) mix(static_cast<std::size_t>(s) + 1);
    }
    return h;
}

}  // namespace

PieceSet::PieceSet(int kappa, std::vector<Word> sorted_words)
    : kappa_(kappa), words_(std::move(sorted_words)) {
    rehash();
}

void PieceSet::rehash() { hash_ = hash_words(kappa_, words_); }

PieceSet PieceSet::extended(SymbolId a) const {
    std::vector<Word> fresh;
    fresh.reserve(words_.size() + 1);
    if (kappa_ >= 1) fresh.push_back(Word{a});
    for (const auto& u : words_) {
        if (static_cast<int>(u.size()) < kappa_) {
            Word ua = u;
            ua.push_back(a);
            fresh.push_back(std::move(ua));
        }
    }
    std::sort(fresh.begin(), fresh.end());
    std::vector<Word> merged;
    merged.reserve(words_.size() + fresh.size());
    std::set_union(words_.begin(), words_.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged));
    return PieceSet(kappa_, std::move(merged));
}

bool PieceSet::contains(const Word& u) const {
    return std::binary_search(words_.begin(), words_.end(), u);
}

bool is_piece(const Word& u, const Word& v) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < v.size() && i < u.size(); ++j) {
        if (v[j] == u[i]) ++i;
    }
    return i == u.size();
}

PieceSet pieces_up_to(const Word& w, int kappa) {
    PieceSet p(kappa);
    for (SymbolId a : w) p = p.extended(a);
    return p;
}

bool kpeq(const Word& u, const Word& v, int kappa) {
    return pieces_up_to(u, kappa) == pieces_up_to(v, kappa);
}

bool AbstractionSet::contains(const PieceSet& p) const {
    return std::binary_search(sets.begin(), sets.end(), p);
}

namespace {

// Dedup store for piece sets with memoized one-letter extensions; BFS cost
// is then one table lookup per (piece set, letter) after the first visit.
class PieceSetInterner {
  public:
    explicit PieceSetInterner(int alphabet_size) : m_(alphabet_size) {}

    int intern(PieceSet p) {
        auto it = ids_.find(p);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(by_id_.size());
        auto [slot, inserted] = ids_.emplace(std::move(p), id);
        (void)inserted;
        by_id_.push_back(&slot->first);
        ext_.emplace_back(static_cast<std::size_t>(m_), -1);
        return id;
    }

    int extend(int id, SymbolId a) {
        int& memo = ext_[static_cast<std::size_t>(id)][static_cast<std::size_t>(a)];
        if (memo < 0) {
            PieceSet next = by_id_[static_cast<std::size_t>(id)]->extended(a);
            memo = intern(std::move(next));
        }
        return memo;
    }

    const PieceSet& get(int id) const { return *by_id_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return by_id_.size(); }

  private:
    int m_;
    std::unordered_map<PieceSet, int, PieceSetHash> ids_;
    std::vector<const PieceSet*> by_id_;  // stable: node-based map
    std::vector<std::vector<int>> ext_;
};

}  // namespace

AbstractionSet abstraction_set(const Nfa& a, int kappa, long long budget) {
    std::vector<std::vector<std::pair<SymbolId, StateId>>> adj(a.state_names.size());
    for (const auto& t : a.transitions) {
        adj[static_cast<std::size_t>(t.from)].emplace_back(t.symbol, t.to);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    PieceSetInterner interner(a.alphabet.size());
    int empty_id = interner.intern(PieceSet(kappa));

    // Pair keys (state, piece-set id); budget caps distinct pairs.
    std::unordered_set<long long> visited;
    std::deque<std::pair<StateId, int>> queue;
    long long count = 0;
    auto visit = [&](StateId q, int ps) {
        long long key = static_cast<long long>(q) * (1ll << 40) + ps;
        if (!visited.insert(key).second) return;
        if (++count > budget) {
            throw BudgetExceededError("abstraction exploration budget exhausted", budget);
        }
        queue.emplace_back(q, ps);
    };
    for (StateId q : a.initial) visit(q, empty_id);

    std::vector<char> is_final_state(a.state_names.size(), 0);
    for (StateId q : a.final) is_final_state[static_cast<std::size_t>(q)] = 1;

    std::unordered_set<int> accepted_sets;
    while (!queue.empty()) {
        auto [q, ps] = queue.front();
        queue.pop_front();
        if (is_final_state[static_cast<std::size_t>(q)]) accepted_sets.insert(ps);
        for (const auto& [sym, to] : adj[static_cast<std::size_t>(q)]) {
            visit(to, interner.extend(ps, sym));
        }
    }

    AbstractionSet result;
    result.kappa = kappa;
    result.sets.reserve(accepted_sets.size());
    for (int id : accepted_sets) result.sets.push_back(interner.get(id));
    std::sort(result.sets.begin(), result.sets.end());
    return result;
}

bool pt_separable_at(const Nfa& a1, const Nfa& a2, int kappa, long long budget) {
    // Piece sets over different alphabets only coincide when the words use
    // shared ids; align by name through a joint canonical alphabet so the
    // comparison is meaningful for arbitrary operand alphabets.
    Alphabet joint = join_alphabets(a1.alphabet, a2.alphabet);
    AbstractionSet s1 = abstraction_set(with_alphabet(a1, joint), kappa, budget);
    AbstractionSet s2 = abstraction_set(with_alphabet(a2, joint), kappa, budget);

    std::size_t i = 0, j = 0;
    while (i < s1.sets.size() && j < s2.sets.size()) {
        if (s1.sets[i] == s2.sets[j]) return false;
        if (s1.sets[i] < s2.sets[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return true;
}

std::optional<int> min_kappa(const Nfa& a1, const Nfa& a2, int kappa_max, long long budget) {
    for (int kappa = 0; kappa <= kappa_max; ++kappa) {
        if (pt_separable_at(a1, a2, kappa, budget)) return kappa;
    }
    return std::nullopt;
}

SeparatorResult separator_dfa(const Nfa& a1, int kappa, long long budget) {
    AbstractionSet accepted = abstraction_set(a1, kappa, budget);

    PieceSetInterner interner(a1.alphabet.size());
    int start = interner.intern(PieceSet(kappa));

    SeparatorResult result;
    result.kappa = kappa;
    result.num_abstractions = accepted.sets.size();
    Dfa& d = result.dfa;
    d.alphabet = a1.alphabet;

    std::deque<int> queue{start};
    std::unordered_map<int, StateId> state_of{{start, 0}};
    d.state_names.push_back("P0");
    d.next.emplace_back(static_cast<std::size_t>(a1.alphabet.size()), kNoState);
    long long count = 1;

    while (!queue.empty()) {
        int ps = queue.front();
        queue.pop_front();
        StateId from = state_of.at(ps);
        for (SymbolId s = 0; s < a1.alphabet.size(); ++s) {
            int to_ps = interner.extend(ps, s);
            auto it = state_of.find(to_ps);
            StateId to;
            if (it == state_of.end()) {
                if (++count > budget) {
                    throw BudgetExceededError("separator state budget exhausted", budget);
                }
                to = static_cast<StateId>(d.state_names.size());
                state_of.emplace(to_ps, to);
                d.state_names.push_back("P" + std::to_string(to));
                d.next.emplace_back(static_cast<std::size_t>(a1.alphabet.size()), kNoState);
                queue.push_back(to_ps);
            } else {
                to = it->second;
            }
            d.next[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = to;
        }
    }

    d.initial = 0;
    for (const auto& [ps, q] : state_of) {
        if (accepted.contains(interner.get(ps))) d.final.push_back(q);
    }
    std::sort(d.final.begin(), d.final.end());
    d.complete = true;
    return result;
}

int pattern_power(const Word& w, const SymSet& b) {
    if (b.empty()) return 0;
    std::vector<SymbolId> targets = b.elements();
    for (SymbolId a : w) {
        if (!(a < b.universe() && b.contains(a))) return 0;
    }
    int rounds = 0;
    std::size_t j = 0;
    for (SymbolId a : w) {
        if (a == targets[j]) {
            if (++j == targets.size()) {
                ++rounds;
                j = 0;
            }
        }
    }
    return rounds;
}

KDecomposition k_decomposition(const Word& w, int alphabet_size) {
    KDecomposition out;
    if (alphabet_size <= 0) {
        out.tail = w;
        return out;
    }
    Word current;
    SymbolId target = 0;
    for (SymbolId a : w) {
        if (a == target) {
            out.factors.push_back(current);
            current.clear();
            target = static_cast<SymbolId>((target + 1) % alphabet_size);
        } else {
            current.push_back(a);
        }
    }
    out.tail = std::move(current);
    out.length = static_cast<int>(out.factors.size());
    out.power = out.length / alphabet_size;
    return out;
}

}  // namespace sepa
