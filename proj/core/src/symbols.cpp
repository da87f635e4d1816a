#include "sepa/symbols.hpp"

#include <algorithm>
#include <bit>

#include "sepa/errors.hpp"

namespace sepa {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) {
            throw SchemaError("alphabet symbol at index " + std::to_string(i) + " is empty");
        }
        auto [it, inserted] = index_.emplace(names_[i], static_cast<SymbolId>(i));
        if (!inserted) {
            throw SchemaError("duplicate alphabet symbol '" + names_[i] + "'");
        }
    }
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SymSet::SymSet(int universe)
    : universe_(universe), bits_(static_cast<std::size_t>((universe + 63) / 64), 0) {}

bool SymSet::empty() const {
    for (auto b : bits_) {
        if (b != 0) return false;
    }
    return true;
}

int SymSet::count() const {
    int total = 0;
    for (auto b : bits_) total += std::popcount(b);
    return total;
}

std::vector<SymbolId> SymSet::elements() const {
    std::vector<SymbolId> out;
    for (SymbolId s = 0; s < universe_; ++s) {
        if (contains(s)) out.push_back(s);
    }
    return out;
}

SymSet& SymSet::operator&=(const SymSet& other) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        bits_[i] &= i < other.bits_.size() ? other.bits_[i] : 0;
    }
    return *this;
}

SymSet& SymSet::operator|=(const SymSet& other) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (i < other.bits_.size()) bits_[i] |= other.bits_[i];
    }
    return *this;
}

bool SymSet::operator<(const SymSet& other) const {
    if (universe_ != other.universe_) return universe_ < other.universe_;
    return bits_ < other.bits_;
}

bool SymSet::is_subset_of(const SymSet& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        std::uint64_t theirs = i < other.bits_.size() ? other.bits_[i] : 0;
        if ((bits_[i] & ~theirs) != 0) return false;
    }
    return true;
}

std::size_t SymSet::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto b : bits_) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

SymSet SymSet::full(int universe) {
    SymSet s(universe);
    for (SymbolId i = 0; i < universe; ++i) s.insert(i);
    return s;
}

SymSet SymSet::of(int universe, std::initializer_list<SymbolId> ids) {
    SymSet s(universe);
    for (SymbolId i : ids) s.insert(i);
    return s;
}

Word word_from_names(const Alphabet& alphabet, const std::vector<std::string>& names) {
    Word w;
    w.reserve(names.size());
    for (const auto& n : names) {
        auto id = alphabet.find(n);
        if (!id) throw UnknownSymbolError("unknown symbol '" + n + "'");
        w.push_back(*id);
    }
    return w;
}

std::vector<std::string> word_to_names(const Alphabet& alphabet, const Word& word) {
    std::vector<std::string> out;
    out.reserve(word.size());
    for (SymbolId s : word) out.push_back(alphabet.name(s));
    return out;
}

Word word_from_chars(const Alphabet& alphabet, std::string_view chars) {
    Word w;
    w.reserve(chars.size());
    for (char c : chars) {
        auto id = alphabet.find(std::string_view(&c, 1));
        if (!id) throw UnknownSymbolError(std::string("unknown symbol '") + c + "'");
        w.push_back(*id);
    }
    return w;
}

SymSet alph(const Word& word, int universe) {
    SymSet s(universe);
    for (SymbolId a : word) s.insert(a);
    return s;
}

}  // namespace sepa
