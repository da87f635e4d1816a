#include "report.hpp"

#include <fstream>
#include <iostream>

namespace sepa_cli {

Json make_report(const std::string& command) {
    Json report;
    report["schema"] = "sepa-report/1";
    report["command"] = command;
    return report;
}

void finish_report(Json& report, long long timing_ms) {
    report["timing_ms"] = timing_ms;
}

bool write_report(const Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return static_cast<bool>(std::cout);
    }
    std::ofstream f(out_path);
    if (!f) {
        std::cerr << "cannot write report to '" << out_path << "'\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

}  // namespace sepa_cli
