#ifndef SEPA_REGEX_HPP
#define SEPA_REGEX_HPP

#include <string_view>

#include "sepa/nfa.hpp"

namespace sepa {

// Position-automaton construction for the grammar
//   expr   := term ('|' term)*
//   term   := factor+
//   factor := atom ('*' | '+')?
//   atom   := literal | '(' expr ')' | '()'
// Literals are single non-metacharacter bytes; '()' is the empty word.
// The result has one state per literal occurrence plus a start state and
// no epsilon moves. Symbols are interned in first-appearance order.
// Throws ParseError with the offending byte offset.
Nfa regex_to_nfa(std::string_view pattern);

}  // namespace sepa

#endif
