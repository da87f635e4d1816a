#ifndef SEPA_TEMPLATES_HPP
#define SEPA_TEMPLATES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sepa/symbols.hpp"

namespace sepa {

// A template item is a single letter or a set of letters; a template is a
// finite sequence of items.
using TemplateItem = std::variant<SymbolId, SymSet>;
using Template = std::vector<TemplateItem>;

// Factorization of a word along a template: cuts[i] is the start of item
// i's factor; cuts.front() == 0 and cuts.back() == |w|.
struct Implementation {
    std::vector<int> cuts;
};

// Every adjacent pair must be unambiguous: two letters always are; two
// sets must be incomparable (neither contains the other); a letter next to
// a set must lie outside that set.
bool is_unambiguous_template(const Template& t);

// Does w factor along t with every letter item matched exactly and every
// set item B carrying a factor over B whose cyclic pattern power is at
// least p? Returns the leftmost such factorization.
std::optional<Implementation> is_p_implementation(const Word& w, const Template& t, int p);

// Collapses w's trivial letter-per-item template: repeatedly merges spans
// whose interval alphabets form a chain of p*|alph(w)|+1 equally-colored
// cut indices into one set item (skipping merges that would not shorten),
// then absorbs ambiguous adjacencies. The result is unambiguous and
// p-implemented by w; both properties are revalidated before returning.
Template reduce_to_short_template(const Word& w, int p, int alphabet_size);

// Piece length that suffices to tell apart implementations of distinct
// unambiguous templates at the given parameters.
long detectability_kappa(long p, long ell, long alphabet_size);

// Whether some piece of w cannot occur in any word implementing t: a
// canonical spelling of t with one foreign block (one or two letters)
// inserted at an item boundary or strictly inside a set item's block,
// the block's border letters escaping the neighboring set items, that
// embeds into w.
bool incompatible_piece_exists(const Word& w, const Template& t);

// JSON form: array of string (letter) | array-of-strings (set).
std::string template_to_json(const Template& t, const Alphabet& alphabet);
Template template_from_json(std::string_view json_text, const Alphabet& alphabet);

}  // namespace sepa

#endif
