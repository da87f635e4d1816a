#ifndef SEPA_TOOLS_REPORT_HPP
#define SEPA_TOOLS_REPORT_HPP

#include <chrono>
#include <string>

#include "json.hpp"

namespace sepa_cli {

using Json = nlohmann::ordered_json;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}

    long long elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// Fresh report skeleton; fields are emitted in insertion order and
// timing_ms is appended last so reports are comparable modulo timing.
Json make_report(const std::string& command);

void finish_report(Json& report, long long timing_ms);

// Writes dump(2) plus a newline to out_path, or stdout when empty.
bool write_report(const Json& report, const std::string& out_path);

}  // namespace sepa_cli

#endif
