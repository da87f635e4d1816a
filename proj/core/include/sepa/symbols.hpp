#ifndef SEPA_SYMBOLS_HPP
#define SEPA_SYMBOLS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sepa {

using SymbolId = int;
using StateId = int;

// A word is a sequence of symbol ids relative to some Alphabet.
using Word = std::vector<SymbolId>;

// Immutable ordered symbol table. The declaration order is the canonical
// order used everywhere (enumeration, pattern rounds, serialization).
class Alphabet {
  public:
    Alphabet() = default;
    // Throws SchemaError on an empty or duplicate name.
    explicit Alphabet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(SymbolId s) const { return names_[static_cast<std::size_t>(s)]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<SymbolId> find(std::string_view name) const;
    bool operator==(const Alphabet& other) const { return names_ == other.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> index_;
};

// Subset of an alphabet of fixed size. Value type with cheap set algebra.
class SymSet {
  public:
    SymSet() = default;
    explicit SymSet(int universe);

    int universe() const { return universe_; }
    bool contains(SymbolId s) const {
        return bits_[static_cast<std::size_t>(s) >> 6] >> (static_cast<std::size_t>(s) & 63) & 1u;
    }
    void insert(SymbolId s) { bits_[static_cast<std::size_t>(s) >> 6] |= std::uint64_t{1} << (static_cast<std::size_t>(s) & 63); }
    void erase(SymbolId s) { bits_[static_cast<std::size_t>(s) >> 6] &= ~(std::uint64_t{1} << (static_cast<std::size_t>(s) & 63)); }

    bool empty() const;
    int count() const;
    std::vector<SymbolId> elements() const;  // ascending ids

    SymSet& operator&=(const SymSet& other);
    SymSet& operator|=(const SymSet& other);
    bool operator==(const SymSet& other) const { return universe_ == other.universe_ && bits_ == other.bits_; }
    bool operator<(const SymSet& other) const;  // by universe, then block content
    bool is_subset_of(const SymSet& other) const;

    std::size_t hash() const;

    static SymSet full(int universe);
    static SymSet of(int universe, std::initializer_list<SymbolId> ids);

  private:
    int universe_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline SymSet operator&(SymSet a, const SymSet& b) { a &= b; return a; }
inline SymSet operator|(SymSet a, const SymSet& b) { a |= b; return a; }

// Helpers for moving between symbol names and ids.
Word word_from_names(const Alphabet& alphabet, const std::vector<std::string>& names);
std::vector<std::string> word_to_names(const Alphabet& alphabet, const Word& word);
// Parses a word given one character per symbol; every character must name a
// symbol of the alphabet. Convenience for tests and expression-sized inputs.
Word word_from_chars(const Alphabet& alphabet, std::string_view chars);

SymSet alph(const Word& word, int universe);

}  // namespace sepa

#endif
