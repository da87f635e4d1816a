#ifndef SEPA_ERRORS_HPP
#define SEPA_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepa {

// Base for every library error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid input document (missing field, unknown state or
// symbol reference, duplicate or empty names, empty alphabet).
struct SchemaError : Error {
    using Error::Error;
};

// Malformed expression text; position is a 0-based byte offset.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t pos)
        : Error(what), position(pos) {}
    std::size_t position;
};

struct UnknownStateError : Error {
    using Error::Error;
};

struct UnknownSymbolError : Error {
    using Error::Error;
};

struct IncompleteDfaError : Error {
    using Error::Error;
};

// Raised before any partial result would be returned; `reached` is the
// number of exploration units consumed when the cap fired.
struct BudgetExceededError : Error {
    BudgetExceededError(const std::string& what, long long count)
        : Error(what), reached(count) {}
    long long reached;
};

struct MonoidTooLargeError : Error {
    using Error::Error;
};

struct InvalidWitnessError : Error {
    using Error::Error;
};

inline constexpr long long kDefaultBudget = 2'000'000;

}  // namespace sepa

#endif
