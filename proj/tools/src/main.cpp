#include <cstdint>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"separability toolkit: piecewise testable and unambiguous targets"};
    app.require_subcommand(1);

    sepa_cli::CommonOptions common;
    std::string in1;
    std::string in2;
    bool with_witness = false;
    int pump_kappa = -1;
    int kappa_max = 4;
    int kappa = 1;
    std::uint64_t seed = 1;
    int pairs = 25;
    int exit_code = sepa_cli::kExitOk;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", common.out, "write the report to this path (default stdout)");
        sub->add_option("--budget", common.budget, "exploration budget (default 2000000)");
        sub->add_option("--dot", common.dot_dir, "emit graphviz files into this directory");
        sub->add_option("--format", common.format, "report format, only json");
    };
    auto add_pair = [&](CLI::App* sub) {
        sub->add_option("a1", in1, "first automaton: a path or re:PATTERN")->required();
        sub->add_option("a2", in2, "second automaton: a path or re:PATTERN")->required();
    };

    auto* pt = app.add_subcommand("pt-separate",
                                  "decide separability by a piecewise testable language");
    add_pair(pt);
    pt->add_flag("--witness", with_witness, "embed the full witness paths in the report");
    pt->add_option("--pump", pump_kappa, "pump the witness at this level and verify the pair");
    add_common(pt);
    pt->callback([&] {
        exit_code = sepa_cli::run_pt_separate(in1, in2, common, with_witness, pump_kappa);
    });

    auto* mk = app.add_subcommand("pt-min-kappa",
                                  "search the least piece length whose abstractions separate");
    add_pair(mk);
    mk->add_option("--max", kappa_max, "largest piece length to try (default 4)");
    add_common(mk);
    mk->callback([&] { exit_code = sepa_cli::run_pt_min_kappa(in1, in2, common, kappa_max); });

    auto* sep = app.add_subcommand("pt-separator",
                                   "build the piece-closure separator automaton at a level");
    sep->add_option("a1", in1, "automaton: a path or re:PATTERN")->required();
    sep->add_option("--kappa", kappa, "piece length of the closure (default 1)");
    add_common(sep);
    sep->callback([&] { exit_code = sepa_cli::run_pt_separator(in1, common, kappa); });

    auto* ul = app.add_subcommand("ul-separate",
                                  "decide separability by an unambiguous language up to a level");
    add_pair(ul);
    ul->add_option("--max-kappa", kappa_max, "largest product size to try (default 4)");
    add_common(ul);
    ul->callback([&] { exit_code = sepa_cli::run_ul_separate(in1, in2, common, kappa_max); });

    auto* bounds = app.add_subcommand("bounds", "report the saturation bounds for a pair");
    add_pair(bounds);
    add_common(bounds);
    bounds->callback([&] { exit_code = sepa_cli::run_bounds(in1, in2, common); });

    auto* monoid = app.add_subcommand("monoid", "transition monoid of the minimized input");
    monoid->add_option("a1", in1, "automaton: a path or re:PATTERN")->required();
    add_common(monoid);
    monoid->callback([&] { exit_code = sepa_cli::run_monoid(in1, common); });

    auto* self = app.add_subcommand("selfcheck",
                                    "cross-validate the deciders on random instances");
    self->add_option("--seed", seed, "generator seed (default 1)");
    self->add_option("--pairs", pairs, "number of random pairs (default 25)");
    add_common(self);
    self->callback([&] { exit_code = sepa_cli::run_selfcheck(common, seed, pairs); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sepa_cli::kExitInput;
    }
    return exit_code;
}
