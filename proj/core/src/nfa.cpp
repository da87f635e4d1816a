#include "sepa/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "sepa/errors.hpp"

namespace sepa {

namespace {

bool sorted_contains(const std::vector<StateId>& xs, StateId q) {
    return std::binary_search(xs.begin(), xs.end(), q);
}

// Outgoing adjacency: per state, (symbol, target) pairs sorted by symbol
// then target. Built on demand; automata are immutable so this never
// invalidates.
std::vector<std::vector<std::pair<SymbolId, StateId>>> out_edges(const Nfa& a) {
    std::vector<std::vector<std::pair<SymbolId, StateId>>> adj(a.state_names.size());
    for (const auto& t : a.transitions) {
        adj[static_cast<std::size_t>(t.from)].emplace_back(t.symbol, t.to);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
}

std::string join_pair_name(const std::string& x, const std::string& y) {
    return "(" + x + "," + y + ")";
}

}  // namespace

bool Nfa::is_final(StateId q) const { return sorted_contains(final, q); }
bool Dfa::is_final(StateId q) const { return sorted_contains(final, q); }

Nfa to_nfa(const Dfa& d) {
    Nfa a;
    a.alphabet = d.alphabet;
    a.state_names = d.state_names;
    a.initial = {d.initial};
    a.final = d.final;
    for (StateId q = 0; q < d.num_states(); ++q) {
        for (SymbolId s = 0; s < d.alphabet.size(); ++s) {
            StateId to = d.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (to != kNoState) a.transitions.push_back({q, s, to});
        }
    }
    std::sort(a.transitions.begin(), a.transitions.end());
    return a;
}

Nfa restrict_alphabet(const Nfa& a, const SymSet& keep) {
    std::vector<std::string> names;
    std::vector<SymbolId> remap(static_cast<std::size_t>(a.alphabet.size()), -1);
    for (SymbolId s = 0; s < a.alphabet.size(); ++s) {
        if (s < keep.universe() && keep.contains(s)) {
            remap[static_cast<std::size_t>(s)] = static_cast<SymbolId>(names.size());
            names.push_back(a.alphabet.name(s));
        }
    }
    Nfa r;
    r.alphabet = Alphabet(std::move(names));
    r.state_names = a.state_names;
    r.initial = a.initial;
    r.final = a.final;
    for (const auto& t : a.transitions) {
        SymbolId s = remap[static_cast<std::size_t>(t.symbol)];
        if (s >= 0) r.transitions.push_back({t.from, s, t.to});
    }
    std::sort(r.transitions.begin(), r.transitions.end());
    return r;
}

Nfa restrict_alphabet(const Nfa& a, const std::vector<std::string>& keep) {
    SymSet mask(a.alphabet.size());
    for (const auto& n : keep) {
        if (auto id = a.alphabet.find(n)) mask.insert(*id);
    }
    return restrict_alphabet(a, mask);
}

std::vector<std::vector<StateId>> sccs(const Nfa& a) {
    const int n = a.num_states();
    auto adj = out_edges(a);

    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> lowlink(static_cast<std::size_t>(n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<StateId> stack;
    std::vector<std::vector<StateId>> comps;
    int next_index = 0;

    struct Frame {
        StateId v;
        std::size_t edge;
    };

    for (StateId root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = 1;

        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& edges = adj[static_cast<std::size_t>(f.v)];
            if (f.edge < edges.size()) {
                StateId w = edges[f.edge++].second;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = lowlink[static_cast<std::size_t>(w)] = next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    lowlink[static_cast<std::size_t>(f.v)] =
                        std::min(lowlink[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (lowlink[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    std::vector<StateId> comp;
                    for (;;) {
                        StateId w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                StateId v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    StateId u = frames.back().v;
                    lowlink[static_cast<std::size_t>(u)] =
                        std::min(lowlink[static_cast<std::size_t>(u)], lowlink[static_cast<std::size_t>(v)]);
                }
            }
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return comps;
}

SymSet scc_alphabet(const Nfa& a, StateId p) {
    if (p < 0 || p >= a.num_states()) {
        throw UnknownStateError("state id " + std::to_string(p) + " out of range");
    }
    auto comps = sccs(a);
    std::vector<int> comp_of(static_cast<std::size_t>(a.num_states()), -1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (StateId q : comps[c]) comp_of[static_cast<std::size_t>(q)] = static_cast<int>(c);
    }
    SymSet labels(a.alphabet.size());
    int pc = comp_of[static_cast<std::size_t>(p)];
    for (const auto& t : a.transitions) {
        if (comp_of[static_cast<std::size_t>(t.from)] == pc &&
            comp_of[static_cast<std::size_t>(t.to)] == pc) {
            labels.insert(t.symbol);
        }
    }
    return labels;
}

Nfa product(const Nfa& a1, const Nfa& a2) {
    // Shared alphabet keeps a1's declaration order.
    std::vector<std::string> shared_names;
    std::vector<std::pair<SymbolId, SymbolId>> shared_ids;
    for (SymbolId s = 0; s < a1.alphabet.size(); ++s) {
        if (auto other = a2.alphabet.find(a1.alphabet.name(s))) {
            shared_ids.emplace_back(s, *other);
            shared_names.push_back(a1.alphabet.name(s));
        }
    }

    auto adj1 = out_edges(a1);
    auto adj2 = out_edges(a2);

    Nfa p;
    p.alphabet = Alphabet(shared_names);

    std::map<std::pair<StateId, StateId>, StateId> id_of;
    std::deque<std::pair<StateId, StateId>> queue;
    auto intern = [&](StateId x, StateId y) {
        auto key = std::make_pair(x, y);
        auto it = id_of.find(key);
        if (it != id_of.end()) return it->second;
        StateId id = static_cast<StateId>(p.state_names.size());
        id_of.emplace(key, id);
        p.state_names.push_back(join_pair_name(a1.state_names[static_cast<std::size_t>(x)],
                                               a2.state_names[static_cast<std::size_t>(y)]));
        queue.emplace_back(x, y);
        return id;
    };

    for (StateId x : a1.initial) {
        for (StateId y : a2.initial) {
            p.initial.push_back(intern(x, y));
        }
    }
    std::sort(p.initial.begin(), p.initial.end());
    p.initial.erase(std::unique(p.initial.begin(), p.initial.end()), p.initial.end());

    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        StateId from = id_of.at({x, y});
        for (std::size_t k = 0; k < shared_ids.size(); ++k) {
            auto [s1, s2] = shared_ids[k];
            for (const auto& [symx, x2] : adj1[static_cast<std::size_t>(x)]) {
                if (symx != s1) continue;
                for (const auto& [symy, y2] : adj2[static_cast<std::size_t>(y)]) {
                    if (symy != s2) continue;
                    StateId to = intern(x2, y2);
                    p.transitions.push_back({from, static_cast<SymbolId>(k), to});
                }
            }
        }
    }

    for (const auto& [key, id] : id_of) {
        if (sorted_contains(a1.final, key.first) && sorted_contains(a2.final, key.second)) {
            p.final.push_back(id);
        }
    }
    std::sort(p.final.begin(), p.final.end());
    std::sort(p.transitions.begin(), p.transitions.end());
    p.transitions.erase(std::unique(p.transitions.begin(), p.transitions.end()), p.transitions.end());
    return p;
}

bool is_empty(const Nfa& a) {
    auto adj = out_edges(a);
    std::vector<char> seen(static_cast<std::size_t>(a.num_states()), 0);
    std::deque<StateId> queue;
    for (StateId q : a.initial) {
        seen[static_cast<std::size_t>(q)] = 1;
        queue.push_back(q);
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        if (a.is_final(q)) return false;
        for (const auto& [s, to] : adj[static_cast<std::size_t>(q)]) {
            (void)s;
            if (!seen[static_cast<std::size_t>(to)]) {
                seen[static_cast<std::size_t>(to)] = 1;
                queue.push_back(to);
            }
        }
    }
    return true;
}

bool accepts(const Nfa& a, const Word& w) {
    auto adj = out_edges(a);
    std::vector<char> cur(static_cast<std::size_t>(a.num_states()), 0);
    for (StateId q : a.initial) cur[static_cast<std::size_t>(q)] = 1;
    for (SymbolId s : w) {
        std::vector<char> next(cur.size(), 0);
        bool any = false;
        for (StateId q = 0; q < a.num_states(); ++q) {
            if (!cur[static_cast<std::size_t>(q)]) continue;
            for (const auto& [sym, to] : adj[static_cast<std::size_t>(q)]) {
                if (sym == s) {
                    next[static_cast<std::size_t>(to)] = 1;
                    any = true;
                }
            }
        }
        if (!any) return false;
        cur.swap(next);
    }
    for (StateId q : a.final) {
        if (cur[static_cast<std::size_t>(q)]) return true;
    }
    return false;
}

std::vector<Word> enumerate(const Nfa& a, int max_len) {
    auto adj = out_edges(a);
    std::vector<Word> accepted;

    // Frontier of (word, reachable set); extended one letter per level in
    // canonical symbol order, which yields shortlex output.
    struct Item {
        Word word;
        std::vector<char> states;
    };
    std::vector<char> start(static_cast<std::size_t>(a.num_states()), 0);
    for (StateId q : a.initial) start[static_cast<std::size_t>(q)] = 1;
    std::vector<Item> frontier{{Word{}, start}};

    auto has_final = [&](const std::vector<char>& set) {
        for (StateId q : a.final) {
            if (set[static_cast<std::size_t>(q)]) return true;
        }
        return false;
    };

    for (int len = 0; len <= max_len; ++len) {
        for (const auto& item : frontier) {
            if (has_final(item.states)) accepted.push_back(item.word);
        }
        if (len == max_len) break;
        std::vector<Item> next_frontier;
        for (const auto& item : frontier) {
            for (SymbolId s = 0; s < a.alphabet.size(); ++s) {
                std::vector<char> next(item.states.size(), 0);
                bool any = false;
                for (StateId q = 0; q < a.num_states(); ++q) {
                    if (!item.states[static_cast<std::size_t>(q)]) continue;
                    for (const auto& [sym, to] : adj[static_cast<std::size_t>(q)]) {
                        if (sym == s) {
                            next[static_cast<std::size_t>(to)] = 1;
                            any = true;
                        }
                    }
                }
                if (!any) continue;
                Word w = item.word;
                w.push_back(s);
                next_frontier.push_back({std::move(w), std::move(next)});
            }
        }
        frontier.swap(next_frontier);
    }
    return accepted;
}

Dfa determinize(const Nfa& a) {
    auto adj = out_edges(a);

    std::map<std::vector<StateId>, StateId> id_of;
    std::deque<std::vector<StateId>> queue;
    Dfa d;
    d.alphabet = a.alphabet;

    auto subset_name = [&](const std::vector<StateId>& subset) {
        std::string name = "{";
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (i) name += ",";
            name += a.state_names[static_cast<std::size_t>(subset[i])];
        }
        name += "}";
        return name;
    };

    auto intern = [&](std::vector<StateId> subset) {
        auto it = id_of.find(subset);
        if (it != id_of.end()) return it->second;
        StateId id = static_cast<StateId>(d.state_names.size());
        d.state_names.push_back(subset_name(subset));
        d.next.emplace_back(static_cast<std::size_t>(a.alphabet.size()), kNoState);
        queue.push_back(subset);
        id_of.emplace(std::move(subset), id);
        return id;
    };

    std::vector<StateId> start = a.initial;
    d.initial = intern(start);

    std::vector<std::pair<std::vector<StateId>, StateId>> order;
    while (!queue.empty()) {
        std::vector<StateId> subset = queue.front();
        queue.pop_front();
        StateId from = id_of.at(subset);
        for (SymbolId s = 0; s < a.alphabet.size(); ++s) {
            std::vector<char> mark(static_cast<std::size_t>(a.num_states()), 0);
            for (StateId q : subset) {
                for (const auto& [sym, to] : adj[static_cast<std::size_t>(q)]) {
                    if (sym == s) mark[static_cast<std::size_t>(to)] = 1;
                }
            }
            std::vector<StateId> target;
            for (StateId q = 0; q < a.num_states(); ++q) {
                if (mark[static_cast<std::size_t>(q)]) target.push_back(q);
            }
            d.next[static_cast<std::size_t>(from)][static_cast<std::size_t>(s)] = intern(std::move(target));
        }
    }

    for (const auto& [subset, id] : id_of) {
        for (StateId q : subset) {
            if (a.is_final(q)) {
                d.final.push_back(id);
                break;
            }
        }
    }
    std::sort(d.final.begin(), d.final.end());
    d.complete = true;
    return d;
}

namespace {

Dfa completed(const Dfa& d) {
    bool needs_sink = !d.complete;
    if (!needs_sink) {
        for (const auto& row : d.next) {
            for (StateId to : row) {
                if (to == kNoState) {
                    needs_sink = true;
                    break;
                }
            }
            if (needs_sink) break;
        }
    }
    Dfa c = d;
    if (!needs_sink) {
        c.complete = true;
        return c;
    }
    std::string sink_name = "_sink";
    while (std::find(c.state_names.begin(), c.state_names.end(), sink_name) != c.state_names.end()) {
        sink_name += "_";
    }
    StateId sink = static_cast<StateId>(c.state_names.size());
    c.state_names.push_back(sink_name);
    c.next.emplace_back(static_cast<std::size_t>(c.alphabet.size()), sink);
    for (auto& row : c.next) {
        for (auto& to : row) {
            if (to == kNoState) to = sink;
        }
    }
    c.complete = true;
    return c;
}

}  // namespace

Dfa minimize(const Dfa& d) {
    Dfa c = completed(d);
    const int m = c.alphabet.size();

    // Reachable restriction.
    std::vector<StateId> order;
    std::vector<char> seen(static_cast<std::size_t>(c.num_states()), 0);
    order.push_back(c.initial);
    seen[static_cast<std::size_t>(c.initial)] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        StateId q = order[i];
        for (SymbolId s = 0; s < m; ++s) {
            StateId to = c.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            if (!seen[static_cast<std::size_t>(to)]) {
                seen[static_cast<std::size_t>(to)] = 1;
                order.push_back(to);
            }
        }
    }

    std::vector<int> cls(static_cast<std::size_t>(c.num_states()), -1);
    for (StateId q : order) cls[static_cast<std::size_t>(q)] = c.is_final(q) ? 1 : 0;

    // Moore refinement over reachable states until stabilization.
    for (;;) {
        std::map<std::vector<int>, int> sig_id;
        std::vector<int> next_cls(cls.size(), -1);
        for (StateId q : order) {
            std::vector<int> sig;
            sig.reserve(static_cast<std::size_t>(m) + 1);
            sig.push_back(cls[static_cast<std::size_t>(q)]);
            for (SymbolId s = 0; s < m; ++s) {
                sig.push_back(cls[static_cast<std::size_t>(
                    c.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)])]);
            }
            auto [it, inserted] = sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size()));
            next_cls[static_cast<std::size_t>(q)] = it->second;
            (void)inserted;
        }
        bool changed = false;
        for (StateId q : order) {
            if (next_cls[static_cast<std::size_t>(q)] != cls[static_cast<std::size_t>(q)]) {
                changed = true;
                break;
            }
        }
        cls.swap(next_cls);
        if (!changed) break;
    }

    // Breadth-first renumbering of classes from the initial class gives a
    // canonical table for every automaton of the same language.
    std::unordered_map<int, StateId> newid;
    std::vector<StateId> rep;  // representative state per new id
    std::vector<StateId> worklist;
    auto intern_class = [&](StateId witness) {
        int cid = cls[static_cast<std::size_t>(witness)];
        auto it = newid.find(cid);
        if (it != newid.end()) return it->second;
        StateId id = static_cast<StateId>(rep.size());
        newid.emplace(cid, id);
        rep.push_back(witness);
        worklist.push_back(witness);
        return id;
    };

    Dfa out;
    out.alphabet = c.alphabet;
    out.initial = intern_class(c.initial);
    for (std::size_t i = 0; i < worklist.size(); ++i) {
        StateId q = worklist[i];
        for (SymbolId s = 0; s < m; ++s) {
            intern_class(c.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]);
        }
    }

    out.state_names.reserve(rep.size());
    for (std::size_t i = 0; i < rep.size(); ++i) {
        out.state_names.push_back("m" + std::to_string(i));
    }
    out.next.assign(rep.size(), std::vector<StateId>(static_cast<std::size_t>(m), kNoState));
    for (std::size_t i = 0; i < rep.size(); ++i) {
        StateId q = rep[i];
        for (SymbolId s = 0; s < m; ++s) {
            StateId to = c.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)];
            out.next[i][static_cast<std::size_t>(s)] = newid.at(cls[static_cast<std::size_t>(to)]);
        }
        if (c.is_final(q)) out.final.push_back(static_cast<StateId>(i));
    }
    std::sort(out.final.begin(), out.final.end());
    out.complete = true;
    return out;
}

Dfa complement(const Dfa& d) {
    Dfa c = completed(d);
    std::vector<StateId> flipped;
    for (StateId q = 0; q < c.num_states(); ++q) {
        if (!c.is_final(q)) flipped.push_back(q);
    }
    c.final = std::move(flipped);
    return c;
}

Alphabet join_alphabets(const Alphabet& a, const Alphabet& b) {
    std::vector<std::string> names = a.names();
    for (const auto& n : b.names()) {
        if (!a.find(n)) names.push_back(n);
    }
    return Alphabet(names);
}

Nfa with_alphabet(const Nfa& a, const Alphabet& target) {
    std::vector<SymbolId> remap(static_cast<std::size_t>(a.alphabet.size()));
    for (SymbolId s = 0; s < a.alphabet.size(); ++s) {
        auto id = target.find(a.alphabet.name(s));
        if (!id) {
            throw UnknownSymbolError("target alphabet lacks symbol '" + a.alphabet.name(s) + "'");
        }
        remap[static_cast<std::size_t>(s)] = *id;
    }
    Nfa r = a;
    r.alphabet = target;
    for (auto& t : r.transitions) t.symbol = remap[static_cast<std::size_t>(t.symbol)];
    std::sort(r.transitions.begin(), r.transitions.end());
    return r;
}

}  // namespace sepa
