#include "sepa/pt.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "sepa/errors.hpp"

namespace sepa {

namespace {

struct Adj {
    // Per state, sorted (symbol, endpoint) pairs.
    std::vector<std::vector<std::pair<SymbolId, StateId>>> out, in;
};

Adj make_adj(const Nfa& a) {
    Adj adj;
    adj.out.resize(a.state_names.size());
    adj.in.resize(a.state_names.size());
    for (const auto& t : a.transitions) {
        adj.out[static_cast<std::size_t>(t.from)].emplace_back(t.symbol, t.to);
        adj.in[static_cast<std::size_t>(t.to)].emplace_back(t.symbol, t.from);
    }
    for (auto& row : adj.out) std::sort(row.begin(), row.end());
    for (auto& row : adj.in) std::sort(row.begin(), row.end());
    return adj;
}

// Component alphabets of the subgraph keeping only mask-labeled edges,
// memoized per mask: one Tarjan pass serves every state.
class MaskedComponents {
  public:
    MaskedComponents(const Nfa& a, const Adj& adj) : a_(a), adj_(adj) {}

    const std::vector<SymSet>& alphabets(const SymSet& mask) {
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(mask, compute(mask)).first->second;
    }

  private:
    std::vector<SymSet> compute(const SymSet& mask) const {
        const int n = a_.num_states();
        std::vector<int> comp(static_cast<std::size_t>(n), -1);
        std::vector<int> index(static_cast<std::size_t>(n), -1);
        std::vector<int> low(static_cast<std::size_t>(n), 0);
        std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
        std::vector<StateId> stack;
        int next_index = 0, next_comp = 0;

        struct Frame {
            StateId v;
            std::size_t edge;
        };
        for (StateId root = 0; root < n; ++root) {
            if (index[static_cast<std::size_t>(root)] != -1) continue;
            std::vector<Frame> frames{{root, 0}};
            index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
            stack.push_back(root);
            on_stack[static_cast<std::size_t>(root)] = 1;
            while (!frames.empty()) {
                Frame& f = frames.back();
                const auto& edges = adj_.out[static_cast<std::size_t>(f.v)];
                bool descended = false;
                while (f.edge < edges.size()) {
                    auto [s, w] = edges[f.edge++];
                    if (!mask.contains(s)) continue;
                    if (index[static_cast<std::size_t>(w)] == -1) {
                        index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
                        stack.push_back(w);
                        on_stack[static_cast<std::size_t>(w)] = 1;
                        frames.push_back({w, 0});
                        descended = true;
                        break;
                    }
                    if (on_stack[static_cast<std::size_t>(w)]) {
                        low[static_cast<std::size_t>(f.v)] = std::min(
                            low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
                    }
                }
                if (descended) continue;
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    for (;;) {
                        StateId w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp[static_cast<std::size_t>(w)] = next_comp;
                        if (w == f.v) break;
                    }
                    ++next_comp;
                }
                StateId v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    StateId u = frames.back().v;
                    low[static_cast<std::size_t>(u)] =
                        std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(v)]);
                }
            }
        }

        std::vector<SymSet> comp_alph(static_cast<std::size_t>(next_comp),
                                      SymSet(a_.alphabet.size()));
        for (const auto& t : a_.transitions) {
            if (!mask.contains(t.symbol)) continue;
            if (comp[static_cast<std::size_t>(t.from)] == comp[static_cast<std::size_t>(t.to)]) {
                comp_alph[static_cast<std::size_t>(comp[static_cast<std::size_t>(t.from)])].insert(t.symbol);
            }
        }
        std::vector<SymSet> per_state;
        per_state.reserve(static_cast<std::size_t>(n));
        for (StateId q = 0; q < n; ++q) {
            per_state.push_back(comp_alph[static_cast<std::size_t>(comp[static_cast<std::size_t>(q)])]);
        }
        return per_state;
    }

    const Nfa& a_;
    const Adj& adj_;
    std::map<SymSet, std::vector<SymSet>> memo_;
};

// Decreasing fixpoint of shared component alphabets; empty means absent.
std::optional<SymSet> mcla_core(MaskedComponents& h1, StateId q1, MaskedComponents& h2,
                                StateId q2, int universe) {
    SymSet c = h1.alphabets(SymSet::full(universe))[static_cast<std::size_t>(q1)] &
               h2.alphabets(SymSet::full(universe))[static_cast<std::size_t>(q2)];
    for (;;) {
        if (c.empty()) return std::nullopt;
        SymSet refined = h1.alphabets(c)[static_cast<std::size_t>(q1)] &
                         h2.alphabets(c)[static_cast<std::size_t>(q2)];
        if (refined == c) return c;
        c = refined;
    }
}

std::vector<char> masked_reach(const Adj& adj, const SymSet& mask, StateId start, bool backward) {
    const auto& rows = backward ? adj.in : adj.out;
    std::vector<char> seen(rows.size(), 0);
    std::deque<StateId> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (const auto& [s, to] : rows[static_cast<std::size_t>(q)]) {
            if (!mask.contains(s)) continue;
            if (!seen[static_cast<std::size_t>(to)]) {
                seen[static_cast<std::size_t>(to)] = 1;
                queue.push_back(to);
            }
        }
    }
    return seen;
}

// Closed walk at q covering every letter of mask, inside q's component of
// the masked graph. Exists whenever mask is a loop alphabet of q.
LabeledRun cover_walk(const Adj& adj, const SymSet& mask, StateId q) {
    auto fwd = masked_reach(adj, mask, q, false);
    auto bwd = masked_reach(adj, mask, q, true);
    std::vector<char> comp(fwd.size(), 0);
    for (std::size_t i = 0; i < fwd.size(); ++i) comp[i] = fwd[i] && bwd[i];

    const int n = static_cast<int>(fwd.size());
    constexpr int kUnset = -1;

    auto bfs = [&](bool backward) {
        std::vector<int> dist(static_cast<std::size_t>(n), kUnset);
        std::vector<std::pair<StateId, SymbolId>> via(static_cast<std::size_t>(n), {kNoState, -1});
        const auto& rows = backward ? adj.in : adj.out;
        std::deque<StateId> queue{q};
        dist[static_cast<std::size_t>(q)] = 0;
        while (!queue.empty()) {
            StateId u = queue.front();
            queue.pop_front();
            for (const auto& [s, v] : rows[static_cast<std::size_t>(u)]) {
                if (!mask.contains(s) || !comp[static_cast<std::size_t>(v)]) continue;
                if (dist[static_cast<std::size_t>(v)] == kUnset) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    via[static_cast<std::size_t>(v)] = {u, s};
                    queue.push_back(v);
                }
            }
        }
        return std::make_pair(dist, via);
    };
    auto [dist_from, via_from] = bfs(false);  // via_from[v]: predecessor towards q
    auto [dist_to, via_to] = bfs(true);       // via_to[v]: successor towards q

    LabeledRun run;
    run.states.push_back(q);
    SymSet covered(mask.universe());

    auto append_path_from_q = [&](StateId u) {
        std::vector<std::pair<SymbolId, StateId>> rev;
        for (StateId v = u; v != q;) {
            auto [p, s] = via_from[static_cast<std::size_t>(v)];
            rev.emplace_back(s, v);
            v = p;
        }
        for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
            run.labels.push_back(it->first);
            run.states.push_back(it->second);
            covered.insert(it->first);
        }
    };
    auto append_path_to_q = [&](StateId v) {
        for (StateId u = v; u != q;) {
            auto [nxt, s] = via_to[static_cast<std::size_t>(u)];
            run.labels.push_back(s);
            run.states.push_back(nxt);
            covered.insert(s);
            u = nxt;
        }
    };

    for (SymbolId b : mask.elements()) {
        if (covered.contains(b)) continue;
        long best = -1;
        StateId best_u = kNoState, best_v = kNoState;
        for (StateId u = 0; u < n; ++u) {
            if (!comp[static_cast<std::size_t>(u)] || dist_from[static_cast<std::size_t>(u)] == kUnset) continue;
            for (const auto& [s, v] : adj.out[static_cast<std::size_t>(u)]) {
                if (s != b || !comp[static_cast<std::size_t>(v)] ||
                    dist_to[static_cast<std::size_t>(v)] == kUnset) {
                    continue;
                }
                long cand = dist_from[static_cast<std::size_t>(u)] + 1 +
                            dist_to[static_cast<std::size_t>(v)];
                if (best == -1 || cand < best) {
                    best = cand;
                    best_u = u;
                    best_v = v;
                }
            }
        }
        if (best == -1) {
            throw Error("internal: loop alphabet letter unreachable inside component");
        }
        append_path_from_q(best_u);
        run.labels.push_back(b);
        run.states.push_back(best_v);
        covered.insert(b);
        append_path_to_q(best_v);
    }
    return run;
}

struct AlignedPair {
    Alphabet joint;
    Nfa b1, b2;
    Adj adj1, adj2;
};

AlignedPair align(const Nfa& a1, const Nfa& a2) {
    AlignedPair p;
    p.joint = join_alphabets(a1.alphabet, a2.alphabet);
    p.b1 = with_alphabet(a1, p.joint);
    p.b2 = with_alphabet(a2, p.joint);
    p.adj1 = make_adj(p.b1);
    p.adj2 = make_adj(p.b2);
    return p;
}

}  // namespace

std::optional<std::vector<std::string>> max_common_loop_alphabet(const Nfa& a1, StateId q1,
                                                                 const Nfa& a2, StateId q2) {
    if (q1 < 0 || q1 >= a1.num_states()) {
        throw UnknownStateError("state id " + std::to_string(q1) + " out of range in first automaton");
    }
    if (q2 < 0 || q2 >= a2.num_states()) {
        throw UnknownStateError("state id " + std::to_string(q2) + " out of range in second automaton");
    }
    AlignedPair p = align(a1, a2);
    MaskedComponents h1(p.b1, p.adj1), h2(p.b2, p.adj2);
    auto mask = mcla_core(h1, q1, h2, q2, p.joint.size());
    if (!mask) return std::nullopt;
    std::vector<std::string> names;
    for (SymbolId s : mask->elements()) names.push_back(p.joint.name(s));
    return names;
}

SummaryAutomata build_summary_automata(const Nfa& a1, const Nfa& a2) {
    AlignedPair p = align(a1, a2);
    MaskedComponents h1(p.b1, p.adj1), h2(p.b2, p.adj2);
    const int n1 = p.b1.num_states(), n2 = p.b2.num_states();

    SummaryAutomata result;
    std::map<std::array<StateId, 4>, std::size_t> seen;

    for (StateId q1 = 0; q1 < n1; ++q1) {
        for (StateId q2 = 0; q2 < n2; ++q2) {
            auto mask = mcla_core(h1, q1, h2, q2, p.joint.size());
            if (!mask) continue;
            auto back1 = masked_reach(p.adj1, *mask, q1, true);
            auto fwd1 = masked_reach(p.adj1, *mask, q1, false);
            auto back2 = masked_reach(p.adj2, *mask, q2, true);
            auto fwd2 = masked_reach(p.adj2, *mask, q2, false);
            std::vector<std::string> mask_names;
            for (SymbolId s : mask->elements()) mask_names.push_back(p.joint.name(s));
            for (StateId s1 = 0; s1 < n1; ++s1) {
                if (!back1[static_cast<std::size_t>(s1)]) continue;
                for (StateId r1 = 0; r1 < n1; ++r1) {
                    if (!fwd1[static_cast<std::size_t>(r1)]) continue;
                    for (StateId s2 = 0; s2 < n2; ++s2) {
                        if (!back2[static_cast<std::size_t>(s2)]) continue;
                        for (StateId r2 = 0; r2 < n2; ++r2) {
                            if (!fwd2[static_cast<std::size_t>(r2)]) continue;
                            std::array<StateId, 4> tuple{s1, r1, s2, r2};
                            if (seen.contains(tuple)) continue;
                            seen.emplace(tuple, result.table.size());
                            SummaryEntry entry;
                            entry.p1 = s1;
                            entry.r1 = r1;
                            entry.p2 = s2;
                            entry.r2 = r2;
                            entry.loop1 = q1;
                            entry.loop2 = q2;
                            entry.loop_alphabet = mask_names;
                            result.table.push_back(std::move(entry));
                        }
                    }
                }
            }
        }
    }

    // Fresh letters: numbered, renamed on collision with input symbols.
    std::vector<std::string> ext_names = p.joint.names();
    for (std::size_t k = 0; k < result.table.size(); ++k) {
        std::string name = "#s" + std::to_string(k);
        while (std::find(ext_names.begin(), ext_names.end(), name) != ext_names.end()) {
            name += "_";
        }
        result.table[k].symbol = name;
        ext_names.push_back(name);
    }
    Alphabet ext(ext_names);

    result.a1_ext = with_alphabet(p.b1, ext);
    result.a2_ext = with_alphabet(p.b2, ext);
    for (const auto& entry : result.table) {
        SymbolId s = *ext.find(entry.symbol);
        result.a1_ext.transitions.push_back({entry.p1, s, entry.r1});
        result.a2_ext.transitions.push_back({entry.p2, s, entry.r2});
    }
    std::sort(result.a1_ext.transitions.begin(), result.a1_ext.transitions.end());
    std::sort(result.a2_ext.transitions.begin(), result.a2_ext.transitions.end());
    return result;
}

namespace {

// Layered search space: real pair nodes carry ordinary product moves; each
// distinct maximal loop alphabet contributes an entry layer (connector
// moves before the loop) and an exit layer (after it). Crossing a layer
// costs one block letter; plain letters cost kOrdinary, so minimal paths
// prefer block structure and the reconstructed witness is canonical.
constexpr std::uint64_t kOrdinary = (std::uint64_t{1} << 32) + 1;
constexpr std::uint64_t kInf = ~std::uint64_t{0};

enum class EdgeKind : std::uint8_t { none, ordinary, enter, async1, async2, loop, exit };

struct SearchEntry {
    std::uint64_t dist = kInf;
    long long prev = -1;
    EdgeKind kind = EdgeKind::none;
    int sym = -1;  // letter for ordinary/async, layer for enter/loop
};

struct SearchStep {
    long long node;
    EdgeKind kind;
    int sym;
};

}  // namespace

PtVerdict decide_pt_separable(const Nfa& a1, const Nfa& a2) {
    AlignedPair p = align(a1, a2);
    if (p.b1.initial.empty() || p.b2.initial.empty() || p.b1.final.empty() || p.b2.final.empty()) {
        return {true, std::nullopt};
    }
    MaskedComponents h1(p.b1, p.adj1), h2(p.b2, p.adj2);
    const long long n1 = p.b1.num_states(), n2 = p.b2.num_states();
    const long long N = n1 * n2;

    // Maximal common loop alphabet per state pair; layers deduplicate masks.
    std::vector<int> pair_layer(static_cast<std::size_t>(N), -1);
    std::map<SymSet, int> layer_of;
    std::vector<SymSet> layer_masks;
    std::vector<std::vector<StateId>> layer_pairs;  // pair indices per layer
    for (StateId x = 0; x < n1; ++x) {
        for (StateId y = 0; y < n2; ++y) {
            auto mask = mcla_core(h1, x, h2, y, p.joint.size());
            if (!mask) continue;
            auto [it, inserted] = layer_of.emplace(*mask, static_cast<int>(layer_masks.size()));
            if (inserted) {
                layer_masks.push_back(*mask);
                layer_pairs.emplace_back();
            }
            long long idx = x * n2 + y;
            pair_layer[static_cast<std::size_t>(idx)] = it->second;
            layer_pairs[static_cast<std::size_t>(it->second)].push_back(static_cast<StateId>(idx));
        }
    }
    const int L = static_cast<int>(layer_masks.size());

    // Per layer, the real pairs from which some loop pair of that layer is
    // reachable by in-layer moves; entering anywhere else is futile.
    std::vector<std::vector<char>> useful(static_cast<std::size_t>(L));
    for (int l = 0; l < L; ++l) {
        std::vector<char>& mark = useful[static_cast<std::size_t>(l)];
        mark.assign(static_cast<std::size_t>(N), 0);
        std::deque<long long> queue;
        for (StateId idx : layer_pairs[static_cast<std::size_t>(l)]) {
            mark[static_cast<std::size_t>(idx)] = 1;
            queue.push_back(idx);
        }
        const SymSet& mask = layer_masks[static_cast<std::size_t>(l)];
        while (!queue.empty()) {
            long long idx = queue.front();
            queue.pop_front();
            StateId x = static_cast<StateId>(idx / n2), y = static_cast<StateId>(idx % n2);
            for (const auto& [s, px] : p.adj1.in[static_cast<std::size_t>(x)]) {
                if (!mask.contains(s)) continue;
                long long pidx = static_cast<long long>(px) * n2 + y;
                if (!mark[static_cast<std::size_t>(pidx)]) {
                    mark[static_cast<std::size_t>(pidx)] = 1;
                    queue.push_back(pidx);
                }
            }
            for (const auto& [s, py] : p.adj2.in[static_cast<std::size_t>(y)]) {
                if (!mask.contains(s)) continue;
                long long pidx = idx - (idx % n2) + py;
                if (!mark[static_cast<std::size_t>(pidx)]) {
                    mark[static_cast<std::size_t>(pidx)] = 1;
                    queue.push_back(pidx);
                }
            }
        }
    }

    // Node ids: [0,N) real; N + (2l+phase)N + idx for layer l, phase 0=in 1=out.
    auto in_node = [&](int l, long long idx) { return N + (2ll * l) * N + idx; };
    auto out_node = [&](int l, long long idx) { return N + (2ll * l + 1) * N + idx; };

    std::unordered_map<long long, SearchEntry> table;
    using PqItem = std::pair<std::uint64_t, long long>;
    std::priority_queue<PqItem, std::vector<PqItem>, std::greater<>> pq;

    auto relax = [&](long long from, long long to, std::uint64_t weight, EdgeKind kind, int sym) {
        std::uint64_t cand = table[from].dist + weight;
        SearchEntry& e = table[to];
        if (cand < e.dist) {
            e.dist = cand;
            e.prev = from;
            e.kind = kind;
            e.sym = sym;
            pq.emplace(cand, to);
        }
    };

    for (StateId x : p.b1.initial) {
        for (StateId y : p.b2.initial) {
            long long idx = static_cast<long long>(x) * n2 + y;
            SearchEntry& e = table[idx];
            e.dist = 0;
            pq.emplace(0, idx);
        }
    }

    while (!pq.empty()) {
        auto [d, node] = pq.top();
        pq.pop();
        if (d != table[node].dist) continue;
        if (node < N) {
            StateId x = static_cast<StateId>(node / n2), y = static_cast<StateId>(node % n2);
            const auto& row1 = p.adj1.out[static_cast<std::size_t>(x)];
            const auto& row2 = p.adj2.out[static_cast<std::size_t>(y)];
            std::size_t j0 = 0;
            for (std::size_t i = 0; i < row1.size(); ++i) {
                SymbolId s = row1[i].first;
                while (j0 < row2.size() && row2[j0].first < s) ++j0;
                for (std::size_t j = j0; j < row2.size() && row2[j].first == s; ++j) {
                    long long to = static_cast<long long>(row1[i].second) * n2 + row2[j].second;
                    relax(node, to, kOrdinary, EdgeKind::ordinary, s);
                }
            }
            for (int l = 0; l < L; ++l) {
                if (useful[static_cast<std::size_t>(l)][static_cast<std::size_t>(node)]) {
                    relax(node, in_node(l, node), 0, EdgeKind::enter, l);
                }
            }
        } else {
            long long t = node - N;
            int l = static_cast<int>(t / (2 * N));
            long long rem = t % (2 * N);
            bool out_phase = rem >= N;
            long long idx = rem % N;
            StateId x = static_cast<StateId>(idx / n2), y = static_cast<StateId>(idx % n2);
            const SymSet& mask = layer_masks[static_cast<std::size_t>(l)];
            auto phase_node = [&](long long i) { return out_phase ? out_node(l, i) : in_node(l, i); };
            for (const auto& [s, x2] : p.adj1.out[static_cast<std::size_t>(x)]) {
                if (!mask.contains(s)) continue;
                relax(node, phase_node(static_cast<long long>(x2) * n2 + y), 0, EdgeKind::async1, s);
            }
            for (const auto& [s, y2] : p.adj2.out[static_cast<std::size_t>(y)]) {
                if (!mask.contains(s)) continue;
                relax(node, phase_node(idx - (idx % n2) + y2), 0, EdgeKind::async2, s);
            }
            if (!out_phase) {
                if (pair_layer[static_cast<std::size_t>(idx)] == l) {
                    relax(node, out_node(l, idx), 1, EdgeKind::loop, l);
                }
            } else {
                relax(node, idx, 0, EdgeKind::exit, -1);
            }
        }
    }

    long long target = -1;
    std::uint64_t best = kInf;
    for (StateId f1 : p.b1.final) {
        for (StateId f2 : p.b2.final) {
            long long idx = static_cast<long long>(f1) * n2 + f2;
            auto it = table.find(idx);
            if (it == table.end() || it->second.dist == kInf) continue;
            if (it->second.dist < best || (it->second.dist == best && idx < target)) {
                best = it->second.dist;
                target = idx;
            }
        }
    }
    if (target < 0) {
        return {true, std::nullopt};
    }

    // Backtrack to the seeded source, then replay forward.
    std::vector<SearchStep> steps;
    for (long long node = target;;) {
        const SearchEntry& e = table.at(node);
        if (e.prev < 0) break;
        steps.push_back({node, e.kind, e.sym});
        node = e.prev;
    }
    std::reverse(steps.begin(), steps.end());

    auto real_x = [&](long long node) {
        long long idx = node < N ? node : (node - N) % N;
        return static_cast<StateId>(idx / n2);
    };
    auto real_y = [&](long long node) {
        long long idx = node < N ? node : (node - N) % N;
        return static_cast<StateId>(idx % n2);
    };

    long long source = target;
    {
        long long node = target;
        while (table.at(node).prev >= 0) node = table.at(node).prev;
        source = node;
    }

    Witness w;
    w.alphabet = p.joint;
    LabeledRun u1, u2;
    u1.states.push_back(real_x(source));
    u2.states.push_back(real_y(source));
    LabeledRun en1, en2, ex1, ex2;
    bool after_loop = false;
    int cur_layer = -1;

    for (const auto& step : steps) {
        switch (step.kind) {
            case EdgeKind::ordinary:
                u1.labels.push_back(step.sym);
                u1.states.push_back(real_x(step.node));
                u2.labels.push_back(step.sym);
                u2.states.push_back(real_y(step.node));
                break;
            case EdgeKind::enter:
                cur_layer = step.sym;
                after_loop = false;
                en1 = LabeledRun{};
                en1.states.push_back(real_x(step.node));
                en2 = LabeledRun{};
                en2.states.push_back(real_y(step.node));
                break;
            case EdgeKind::async1: {
                LabeledRun& run = after_loop ? ex1 : en1;
                run.labels.push_back(step.sym);
                run.states.push_back(real_x(step.node));
                break;
            }
            case EdgeKind::async2: {
                LabeledRun& run = after_loop ? ex2 : en2;
                run.labels.push_back(step.sym);
                run.states.push_back(real_y(step.node));
                break;
            }
            case EdgeKind::loop: {
                after_loop = true;
                ex1 = LabeledRun{};
                ex1.states.push_back(real_x(step.node));
                ex2 = LabeledRun{};
                ex2.states.push_back(real_y(step.node));
                break;
            }
            case EdgeKind::exit: {
                const SymSet& mask = layer_masks[static_cast<std::size_t>(cur_layer)];
                w.pair.u.push_back(u1.labels);
                w.side1.u_runs.push_back(u1);
                w.side2.u_runs.push_back(u2);
                w.pair.b.push_back(mask);
                WitnessBlock b1_block;
                b1_block.enter = en1;
                b1_block.loop = cover_walk(p.adj1, mask, en1.states.back());
                b1_block.exit = ex1;
                WitnessBlock b2_block;
                b2_block.enter = en2;
                b2_block.loop = cover_walk(p.adj2, mask, en2.states.back());
                b2_block.exit = ex2;
                w.side1.blocks.push_back(std::move(b1_block));
                w.side2.blocks.push_back(std::move(b2_block));
                u1 = LabeledRun{};
                u1.states.push_back(real_x(step.node));
                u2 = LabeledRun{};
                u2.states.push_back(real_y(step.node));
                break;
            }
            case EdgeKind::none:
                break;
        }
    }
    w.pair.u.push_back(u1.labels);
    w.side1.u_runs.push_back(u1);
    w.side2.u_runs.push_back(u2);

    return {false, std::move(w)};
}

namespace {

// Shape obligations that need no automaton: sizes, run chaining, label
// agreement with the skeleton, loop closure and loop alphabet.
bool witness_structure_ok(const Witness& w) {
    const std::size_t p = w.pair.b.size();
    if (w.pair.u.size() != p + 1) return false;
    for (const WitnessSide* side : {&w.side1, &w.side2}) {
        if (side->u_runs.size() != p + 1 || side->blocks.size() != p) return false;
        for (std::size_t i = 0; i <= p; ++i) {
            const LabeledRun& run = side->u_runs[i];
            if (run.states.size() != run.labels.size() + 1) return false;
            if (run.labels != w.pair.u[i]) return false;
        }
        for (std::size_t i = 0; i < p; ++i) {
            const SymSet& b = w.pair.b[i];
            if (b.empty()) return false;
            const WitnessBlock& blk = side->blocks[i];
            for (const LabeledRun* run : {&blk.enter, &blk.loop, &blk.exit}) {
                if (run->states.size() != run->labels.size() + 1) return false;
            }
            if (blk.loop.labels.empty()) return false;
            if (blk.loop.states.front() != blk.loop.states.back()) return false;
            SymSet loop_alph(b.universe());
            for (SymbolId s : blk.loop.labels) {
                if (s < 0 || s >= b.universe()) return false;
                loop_alph.insert(s);
            }
            if (!(loop_alph == b)) return false;
            for (const LabeledRun* run : {&blk.enter, &blk.exit}) {
                for (SymbolId s : run->labels) {
                    if (s < 0 || s >= b.universe() || !b.contains(s)) return false;
                }
            }
            // Chaining: u_i ends where the connector starts, the connector
            // meets the loop, the loop meets the exit, the exit starts u_{i+1}.
            if (side->u_runs[i].states.back() != blk.enter.states.front()) return false;
            if (blk.enter.states.back() != blk.loop.states.front()) return false;
            if (blk.loop.states.back() != blk.exit.states.front()) return false;
            if (blk.exit.states.back() != side->u_runs[i + 1].states.front()) return false;
        }
    }
    return true;
}

bool side_runs_in_automaton(const WitnessSide& side, const Alphabet& witness_alphabet,
                            const Nfa& a) {
    // Translate witness letters into the automaton's ids by name.
    std::vector<SymbolId> to_local(static_cast<std::size_t>(witness_alphabet.size()), -1);
    for (SymbolId s = 0; s < witness_alphabet.size(); ++s) {
        if (auto id = a.alphabet.find(witness_alphabet.name(s))) to_local[static_cast<std::size_t>(s)] = *id;
    }
    auto run_ok = [&](const LabeledRun& run) {
        for (std::size_t i = 0; i < run.labels.size(); ++i) {
            SymbolId s = run.labels[i];
            if (s < 0 || s >= witness_alphabet.size()) return false;
            SymbolId local = to_local[static_cast<std::size_t>(s)];
            if (local < 0) return false;
            StateId from = run.states[i], to = run.states[i + 1];
            if (from < 0 || from >= a.num_states() || to < 0 || to >= a.num_states()) return false;
            if (!std::binary_search(a.transitions.begin(), a.transitions.end(),
                                    Transition{from, local, to})) {
                return false;
            }
        }
        for (StateId q : run.states) {
            if (q < 0 || q >= a.num_states()) return false;
        }
        return true;
    };
    for (const auto& run : side.u_runs) {
        if (!run_ok(run)) return false;
    }
    for (const auto& blk : side.blocks) {
        if (!run_ok(blk.enter) || !run_ok(blk.loop) || !run_ok(blk.exit)) return false;
    }
    StateId start = side.u_runs.front().states.front();
    StateId end = side.u_runs.back().states.back();
    if (!std::binary_search(a.initial.begin(), a.initial.end(), start)) return false;
    if (!std::binary_search(a.final.begin(), a.final.end(), end)) return false;
    return true;
}

}  // namespace

bool verify_witness(const Witness& w, const Nfa& a1, const Nfa& a2) {
    if (!witness_structure_ok(w)) return false;
    return side_runs_in_automaton(w.side1, w.alphabet, a1) &&
           side_runs_in_automaton(w.side2, w.alphabet, a2);
}

std::pair<Word, Word> pump_witness(const Witness& w, int kappa) {
    if (kappa < 0) throw InvalidWitnessError("negative pump level");
    if (!witness_structure_ok(w)) {
        throw InvalidWitnessError("witness fails structural validation");
    }
    auto build = [&](const WitnessSide& side) {
        Word out;
        for (std::size_t i = 0; i < side.u_runs.size(); ++i) {
            const Word& u = side.u_runs[i].labels;
            out.insert(out.end(), u.begin(), u.end());
            if (i < side.blocks.size()) {
                const WitnessBlock& blk = side.blocks[i];
                out.insert(out.end(), blk.enter.labels.begin(), blk.enter.labels.end());
                for (int k = 0; k < kappa; ++k) {
                    out.insert(out.end(), blk.loop.labels.begin(), blk.loop.labels.end());
                }
                out.insert(out.end(), blk.exit.labels.begin(), blk.exit.labels.end());
            }
        }
        return out;
    };
    return {build(w.side1), build(w.side2)};
}

BigInt kappa_bound(long k1, long k2, long alphabet_size) {
    const long m = alphabet_size;
    const long p = std::max(k1, k2) + 1;
    if (m <= 0) return 0;
    if (m > 40) {
        throw std::overflow_error("level bound exponent exceeds the supported range");
    }
    BigInt exponent = (BigInt(1) << static_cast<unsigned>(m)) * m * (BigInt(p) * m + 1);
    if (exponent > 100'000'000) {
        throw std::overflow_error("level bound exponent exceeds the supported range");
    }
    return BigInt(p) * m * (BigInt(1) << exponent.convert_to<unsigned>());
}

}  // namespace sepa
