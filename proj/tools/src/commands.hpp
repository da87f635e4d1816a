#ifndef SEPA_TOOLS_COMMANDS_HPP
#define SEPA_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>

#include "sepa/errors.hpp"

namespace sepa_cli {

// Exit contract: 0 = question answered (either way), 2 = input could not
// be read or parsed, 3 = a budget or size cap fired, 1 = internal failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;

struct CommonOptions {
    std::string out;       // empty = stdout
    long long budget = sepa::kDefaultBudget;
    std::string dot_dir;   // empty = no graphviz output
    std::string format = "json";
};

// Inputs are file paths of automaton documents, or re:PATTERN expressions.
int run_pt_separate(const std::string& in1, const std::string& in2,
                    const CommonOptions& common, bool with_witness, int pump_kappa);
int run_pt_min_kappa(const std::string& in1, const std::string& in2,
                     const CommonOptions& common, int kappa_max);
int run_pt_separator(const std::string& in1, const CommonOptions& common, int kappa);
int run_ul_separate(const std::string& in1, const std::string& in2,
                    const CommonOptions& common, int kappa_max);
int run_bounds(const std::string& in1, const std::string& in2,
               const CommonOptions& common);
int run_monoid(const std::string& in1, const CommonOptions& common);
int run_selfcheck(const CommonOptions& common, std::uint64_t seed, int pairs);

}  // namespace sepa_cli

#endif
