#ifndef SEPA_BIGINT_HPP
#define SEPA_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace sepa {

// Exact arbitrary-precision integer for the level bounds, which outgrow
// any machine word almost immediately.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace sepa

#endif
