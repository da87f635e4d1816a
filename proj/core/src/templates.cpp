#include "sepa/templates.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "sepa/errors.hpp"
#include "sepa/pieces.hpp"

namespace sepa {

namespace {

bool is_letter(const TemplateItem& item) { return std::holds_alternative<SymbolId>(item); }
SymbolId letter_of(const TemplateItem& item) { return std::get<SymbolId>(item); }
const SymSet& set_of(const TemplateItem& item) { return std::get<SymSet>(item); }

bool pair_unambiguous(const TemplateItem& x, const TemplateItem& y) {
    if (is_letter(x) && is_letter(y)) return true;
    if (is_letter(x)) return !set_of(y).contains(letter_of(x));
    if (is_letter(y)) return !set_of(x).contains(letter_of(y));
    const SymSet& a = set_of(x);
    const SymSet& b = set_of(y);
    return !a.is_subset_of(b) && !b.is_subset_of(a);
}

}  // namespace

bool is_unambiguous_template(const Template& t) {
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (!pair_unambiguous(t[i], t[i + 1])) return false;
    }
    return true;
}

std::optional<Implementation> is_p_implementation(const Word& w, const Template& t, int p) {
    const int n = static_cast<int>(w.size());
    const int ell = static_cast<int>(t.size());

    // reach[j][i]: w[0..i) factors along the first j items; parents give
    // the leftmost factorization.
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(ell) + 1,
                                         std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
    std::vector<std::vector<int>> parent(static_cast<std::size_t>(ell) + 1,
                                         std::vector<int>(static_cast<std::size_t>(n) + 1, -1));
    reach[0][0] = 1;

    for (int j = 0; j < ell; ++j) {
        const TemplateItem& item = t[static_cast<std::size_t>(j)];
        for (int i = 0; i <= n; ++i) {
            if (!reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) continue;
            if (is_letter(item)) {
                if (i < n && w[static_cast<std::size_t>(i)] == letter_of(item) &&
                    !reach[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i) + 1]) {
                    reach[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i) + 1] = 1;
                    parent[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i) + 1] = i;
                }
                continue;
            }
            const SymSet& b = set_of(item);
            std::vector<SymbolId> targets = b.elements();
            // Walk right while letters stay in b, tracking complete cyclic
            // rounds; each prefix with enough rounds is a valid factor.
            int rounds = 0;
            std::size_t tpos = 0;
            if (p <= 0 && !reach[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i)]) {
                reach[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i)] = 1;
                parent[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i)] = i;
            }
            for (int end = i; end < n; ++end) {
                SymbolId a = w[static_cast<std::size_t>(end)];
                if (a >= b.universe() || !b.contains(a)) break;
                if (!targets.empty() && a == targets[tpos]) {
                    if (++tpos == targets.size()) {
                        ++rounds;
                        tpos = 0;
                    }
                }
                if (rounds >= p &&
                    !reach[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(end) + 1]) {
                    reach[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(end) + 1] = 1;
                    parent[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(end) + 1] = i;
                }
            }
        }
    }

    if (!reach[static_cast<std::size_t>(ell)][static_cast<std::size_t>(n)]) return std::nullopt;
    Implementation impl;
    impl.cuts.assign(static_cast<std::size_t>(ell) + 1, 0);
    impl.cuts[static_cast<std::size_t>(ell)] = n;
    int pos = n;
    for (int j = ell; j > 0; --j) {
        pos = parent[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)];
        impl.cuts[static_cast<std::size_t>(j) - 1] = pos;
    }
    return impl;
}

namespace {

// Letters occurring in a span of w, as a set over the given universe.
SymSet span_alph(const Word& w, int lo, int hi, int universe) {
    SymSet s(universe);
    for (int i = lo; i < hi; ++i) s.insert(w[static_cast<std::size_t>(i)]);
    return s;
}

}  // namespace

Template reduce_to_short_template(const Word& w, int p, int alphabet_size) {
    const int n = static_cast<int>(w.size());
    SymSet used = alph(w, alphabet_size);
    const int a_count = used.count();
    const int threshold = p * a_count + 1;  // chain size that forces a merge

    // Items as intervals of w; letter items are width-1 spans flagged
    // letter, set items carry their alphabet.
    struct Span {
        int lo, hi;
        bool letter;
    };
    std::vector<Span> spans;
    spans.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) spans.push_back({i, i + 1, true});

    // Merge loop: cut positions are span borders; the interval coloring
    // (span alphabets) is union-monotone, so monochromatic cliques of cut
    // indices are exactly chains of equally-colored consecutive intervals.
    for (;;) {
        const int k = static_cast<int>(spans.size());
        if (k == 0) break;
        std::vector<int> cuts(static_cast<std::size_t>(k) + 1);
        for (int i = 0; i < k; ++i) cuts[static_cast<std::size_t>(i)] = spans[static_cast<std::size_t>(i)].lo;
        cuts[static_cast<std::size_t>(k)] = spans.back().hi;

        int merge_lo = -1, merge_hi = -1;
        SymSet merge_color;

        if (threshold <= 2) {
            // Any two cuts at distance >= 2 merge; take the leftmost pair.
            for (int j = 2; j <= k && merge_lo < 0; ++j) {
                merge_lo = j - 2;
                merge_hi = j;
                merge_color = span_alph(w, cuts[static_cast<std::size_t>(j) - 2],
                                        cuts[static_cast<std::size_t>(j)], alphabet_size);
            }
        } else {
            // chain_len[j] per color: longest equally-colored chain ending
            // at cut j; parents recover the chain start.
            std::vector<std::map<SymSet, std::pair<int, int>>> chains(
                static_cast<std::size_t>(k) + 1);  // color -> (length, prev cut)
            for (int j = 1; j <= k && merge_lo < 0; ++j) {
                for (int i = 0; i < j; ++i) {
                    SymSet color = span_alph(w, cuts[static_cast<std::size_t>(i)],
                                             cuts[static_cast<std::size_t>(j)], alphabet_size);
                    int len = 2;
                    auto from = chains[static_cast<std::size_t>(i)].find(color);
                    if (from != chains[static_cast<std::size_t>(i)].end()) {
                        len = from->second.first + 1;
                    }
                    auto& slot = chains[static_cast<std::size_t>(j)][color];
                    if (slot.first < len) slot = {len, i};
                    if (len >= threshold) {
                        // Backtrack to the chain start.
                        int start = i;
                        int steps = len - 2;
                        while (steps-- > 0) start = chains[static_cast<std::size_t>(start)].at(color).second;
                        merge_lo = start;
                        merge_hi = j;
                        merge_color = color;
                        break;
                    }
                }
            }
        }

        if (merge_lo < 0) break;
        std::vector<Span> next;
        next.reserve(spans.size());
        for (int i = 0; i < merge_lo; ++i) next.push_back(spans[static_cast<std::size_t>(i)]);
        next.push_back({cuts[static_cast<std::size_t>(merge_lo)], cuts[static_cast<std::size_t>(merge_hi)], false});
        for (int i = merge_hi; i < k; ++i) next.push_back(spans[static_cast<std::size_t>(i)]);
        if (next.size() >= spans.size()) break;  // no shortening possible
        spans.swap(next);
    }

    Template t;
    for (const Span& s : spans) {
        if (s.letter) {
            t.emplace_back(w[static_cast<std::size_t>(s.lo)]);
        } else {
            t.emplace_back(span_alph(w, s.lo, s.hi, alphabet_size));
        }
    }

    // Ambiguous adjacencies collapse into set items; this only grows
    // factors inside their own alphabets, so implementability survives.
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
            if (pair_unambiguous(t[i], t[i + 1])) continue;
            SymSet merged(alphabet_size);
            for (const TemplateItem* item : {&t[i], &t[i + 1]}) {
                if (is_letter(*item)) {
                    merged.insert(letter_of(*item));
                } else {
                    merged |= set_of(*item);
                }
            }
            t[i] = TemplateItem(merged);
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            changed = true;
            break;
        }
        if (!changed) break;
    }

    if (!is_unambiguous_template(t)) {
        throw Error("internal: reduced template still ambiguous");
    }
    if (!is_p_implementation(w, t, p)) {
        throw Error("internal: reduced template not implemented by its word");
    }
    return t;
}

long detectability_kappa(long p, long ell, long alphabet_size) {
    return alphabet_size * p * ell;
}

bool incompatible_piece_exists(const Word& w, const Template& t) {
    if (t.empty()) return false;
    const std::size_t ell = t.size();

    // Canonical one-round spelling of each item.
    std::vector<Word> seg(ell);
    for (std::size_t i = 0; i < ell; ++i) {
        if (is_letter(t[i])) {
            seg[i] = Word{letter_of(t[i])};
        } else {
            seg[i] = set_of(t[i]).elements();
        }
    }

    std::vector<SymbolId> letters;
    {
        SymbolId max_id = 0;
        for (SymbolId a : w) max_id = std::max(max_id, a);
        SymSet present = alph(w, max_id + 1);
        letters = present.elements();
    }

    auto blocked_first = [&](std::size_t item, SymbolId a) {
        return !is_letter(t[item]) && set_of(t[item]).contains(a);
    };

    auto try_block = [&](const Word& prefix, const Word& suffix,
                         std::optional<std::size_t> left_set, std::optional<std::size_t> right_set) {
        for (SymbolId first : letters) {
            if (left_set && blocked_first(*left_set, first)) continue;
            // One-letter block: the single letter is both border letters.
            if (!(right_set && blocked_first(*right_set, first))) {
                Word z = prefix;
                z.push_back(first);
                z.insert(z.end(), suffix.begin(), suffix.end());
                if (is_piece(z, w)) return true;
            }
            for (SymbolId last : letters) {
                if (right_set && blocked_first(*right_set, last)) continue;
                Word z = prefix;
                z.push_back(first);
                z.push_back(last);
                z.insert(z.end(), suffix.begin(), suffix.end());
                if (is_piece(z, w)) return true;
            }
        }
        return false;
    };

    // Item-boundary insertions (both ends included).
    for (std::size_t cut = 0; cut <= ell; ++cut) {
        Word prefix, suffix;
        for (std::size_t i = 0; i < cut; ++i) prefix.insert(prefix.end(), seg[i].begin(), seg[i].end());
        for (std::size_t i = cut; i < ell; ++i) suffix.insert(suffix.end(), seg[i].begin(), seg[i].end());
        std::optional<std::size_t> left_set, right_set;
        if (cut > 0 && !is_letter(t[cut - 1])) left_set = cut - 1;
        if (cut < ell && !is_letter(t[cut])) right_set = cut;
        if (try_block(prefix, suffix, left_set, right_set)) return true;
    }

    // Insertions strictly inside a set item's block; both sides stay
    // nonempty, both border letters must escape the set.
    for (std::size_t i = 0; i < ell; ++i) {
        if (is_letter(t[i])) continue;
        const Word& block = seg[i];
        for (std::size_t split = 1; split < block.size(); ++split) {
            Word prefix, suffix;
            for (std::size_t k = 0; k < i; ++k) prefix.insert(prefix.end(), seg[k].begin(), seg[k].end());
            prefix.insert(prefix.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(split));
            suffix.insert(suffix.end(), block.begin() + static_cast<std::ptrdiff_t>(split), block.end());
            for (std::size_t k = i + 1; k < ell; ++k) suffix.insert(suffix.end(), seg[k].begin(), seg[k].end());
            if (try_block(prefix, suffix, i, i)) return true;
        }
    }
    return false;
}

std::string template_to_json(const Template& t, const Alphabet& alphabet) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& item : t) {
        if (is_letter(item)) {
            doc.push_back(alphabet.name(letter_of(item)));
        } else {
            nlohmann::ordered_json set = nlohmann::ordered_json::array();
            for (SymbolId s : set_of(item).elements()) set.push_back(alphabet.name(s));
            doc.push_back(std::move(set));
        }
    }
    return doc.dump();
}

Template template_from_json(std::string_view json_text, const Alphabet& alphabet) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw SchemaError("template document must be an array");
    Template t;
    for (const auto& item : doc) {
        if (item.is_string()) {
            auto id = alphabet.find(item.get<std::string>());
            if (!id) throw SchemaError("unknown symbol '" + item.get<std::string>() + "'");
            t.emplace_back(*id);
        } else if (item.is_array()) {
            SymSet set(alphabet.size());
            for (const auto& entry : item) {
                if (!entry.is_string()) throw SchemaError("set items must hold strings");
                auto id = alphabet.find(entry.get<std::string>());
                if (!id) throw SchemaError("unknown symbol '" + entry.get<std::string>() + "'");
                set.insert(*id);
            }
            t.emplace_back(std::move(set));
        } else {
            throw SchemaError("template items must be strings or arrays of strings");
        }
    }
    return t;
}

}  // namespace sepa
