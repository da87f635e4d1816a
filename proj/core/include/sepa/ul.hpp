#ifndef SEPA_UL_HPP
#define SEPA_UL_HPP

#include <vector>

#include "sepa/bigint.hpp"
#include "sepa/errors.hpp"
#include "sepa/nfa.hpp"
#include "sepa/symbols.hpp"

namespace sepa {

// Product expression B0* a1 B1* ... ak Bk*. The size is k, the number of
// explicit letters; sets has k+1 entries over a shared universe.
struct UnambiguousProduct {
    std::vector<SymSet> sets;
    Word letters;

    int size() const { return static_cast<int>(letters.size()); }
};

// Parser automaton of the product: state i loops on sets[i] and advances
// to i+1 on letters[i]; accepting runs are exactly the factorizations.
// The alphabet must have the sets' universe size.
Nfa product_to_nfa(const UnambiguousProduct& p, const Alphabet& alphabet);

// True iff no word has two accepting parser runs: in the parser's
// self-product no off-diagonal pair is both reachable from (0,0) and
// co-reachable to (k,k).
bool is_unambiguous_product(const UnambiguousProduct& p);

// Every unambiguous product of size <= kappa over symbols 0..alphabet_size-1,
// in canonical order: by size, then lexicographic over the digit tuple
// (B0, a1, B1, ..., ak, Bk) with sets compared as bit masks. Throws
// BudgetExceededError when the raw candidate count exceeds the budget.
std::vector<UnambiguousProduct> enumerate_unambiguous_products(
    int alphabet_size, int kappa, long long budget = kDefaultBudget);

// Membership vector of one word over the canonical enumeration; two words
// are ul-equivalent at kappa iff their vectors agree.
struct UlAbstraction {
    int kappa = 0;
    std::vector<char> bits;

    bool operator==(const UlAbstraction&) const = default;
};

UlAbstraction ul_abstraction(const Word& w, int alphabet_size, int kappa,
                             long long budget = kDefaultBudget);

bool ul_eq(const Word& w1, const Word& w2, int alphabet_size, int kappa,
           long long budget = kDefaultBudget);

// True iff the abstraction image sets of the two languages are disjoint,
// i.e. some boolean combination of unambiguous products of size <= kappa
// separates them. Exact when within budget (counts distinct search
// configurations per automaton).
bool ul_separable_at(const Nfa& a1, const Nfa& a2, int kappa,
                     long long budget = kDefaultBudget);

enum class UlStatus { separable_at, not_separable_up_to, definitive_not_separable };

struct UlVerdict {
    UlStatus status = UlStatus::not_separable_up_to;
    int kappa = 0;  // least separating size, or the scanned kappa_max
    BigInt kappa_bound;
    int m1 = 0;  // transition monoid sizes of the minimized inputs
    int m2 = 0;
};

// Scans kappa = 0..kappa_max. A negative answer is definitive exactly when
// kappa_max reaches ul_kappa_bound of the inputs' transition monoids.
UlVerdict decide_ul_separable(const Nfa& a1, const Nfa& a2, int kappa_max,
                              long long budget = kDefaultBudget);

// True iff w is an h-pattern but not an (h+1)-pattern for the given cyclic
// letter order, i.e. its greedy pattern power is exactly h.
bool admits_h_decomposition(const Word& w, long h, const std::vector<SymbolId>& order);

}  // namespace sepa

#endif
