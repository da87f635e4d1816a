#include "commands.hpp"

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sepa/io.hpp"
#include "sepa/monoid.hpp"
#include "sepa/nfa.hpp"
#include "sepa/pieces.hpp"
#include "sepa/pt.hpp"
#include "sepa/regex.hpp"
#include "sepa/symbols.hpp"
#include "sepa/ul.hpp"

#include "report.hpp"

namespace sepa_cli {

namespace {

sepa::Nfa load_input(const std::string& source) {
    if (source.rfind("re:", 0) == 0) {
        return sepa::regex_to_nfa(std::string_view(source).substr(3));
    }
    std::ifstream f(source);
    if (!f) throw sepa::SchemaError("cannot read input file '" + source + "'");
    std::ostringstream text;
    text << f.rdbuf();
    return sepa::parse_nfa(text.str());
}

// Digest of the canonical serialization, so formatting and the re: form
// do not matter.
Json input_entry(const std::string& source, const sepa::Nfa& a) {
    Json e;
    e["source"] = source;
    e["digest"] = sepa::fnv1a64_hex(sepa::nfa_to_json(a));
    return e;
}

void emit_dot(const CommonOptions& common, const std::string& name,
              const std::string& text) {
    if (common.dot_dir.empty()) return;
    std::filesystem::create_directories(common.dot_dir);
    const auto path = std::filesystem::path(common.dot_dir) / (name + ".dot");
    std::ofstream f(path);
    if (!f) throw sepa::Error("cannot write dot file '" + path.string() + "'");
    f << text;
}

// Shared command shell: builds the report, maps errors onto the exit
// contract, appends timing, writes the report out.
template <typename Body>
int run_guarded(const std::string& command, const CommonOptions& common, Body&& body) {
    Timer timer;
    Json report = make_report(command);
    report["budget"] = Json{{"limit", common.budget}};
    int code = kExitOk;
    try {
        if (common.format != "json") {
            throw sepa::SchemaError("unsupported report format '" + common.format + "'");
        }
        code = body(report);
    } catch (const sepa::ParseError& e) {
        report["error"] = Json{{"type", "parse"}, {"message", e.what()}, {"position", e.position}};
        code = kExitInput;
    } catch (const sepa::SchemaError& e) {
        report["error"] = Json{{"type", "schema"}, {"message", e.what()}};
        code = kExitInput;
    } catch (const sepa::BudgetExceededError& e) {
        report["error"] = Json{{"type", "budget"}, {"message", e.what()}, {"reached", e.reached}};
        code = kExitBudget;
    } catch (const sepa::MonoidTooLargeError& e) {
        report["error"] = Json{{"type", "budget"}, {"message", e.what()}};
        code = kExitBudget;
    } catch (const std::exception& e) {
        report["error"] = Json{{"type", "internal"}, {"message", e.what()}};
        code = kExitInternal;
    }
    finish_report(report, timer.elapsed_ms());
    if (!write_report(report, common.out) && code == kExitOk) code = kExitInternal;
    return code;
}

Json word_names(const sepa::Word& w, const sepa::Alphabet& alphabet) {
    Json out = Json::array();
    for (sepa::SymbolId s : w) out.push_back(alphabet.name(s));
    return out;
}

Json set_names(const sepa::SymSet& b, const sepa::Alphabet& alphabet) {
    Json out = Json::array();
    for (sepa::SymbolId s : b.elements()) out.push_back(alphabet.name(s));
    return out;
}

Json run_json(const sepa::LabeledRun& run, const sepa::Alphabet& alphabet,
              const std::vector<std::string>& state_names) {
    Json labels = Json::array();
    for (sepa::SymbolId s : run.labels) labels.push_back(alphabet.name(s));
    Json states = Json::array();
    for (sepa::StateId q : run.states) states.push_back(state_names[static_cast<std::size_t>(q)]);
    return Json{{"labels", labels}, {"states", states}};
}

Json side_json(const sepa::WitnessSide& side, const sepa::Alphabet& alphabet,
               const std::vector<std::string>& state_names) {
    Json segments = Json::array();
    for (std::size_t i = 0; i < side.u_runs.size(); ++i) {
        segments.push_back(Json{{"kind", "word"},
                                {"run", run_json(side.u_runs[i], alphabet, state_names)}});
        if (i < side.blocks.size()) {
            const auto& blk = side.blocks[i];
            segments.push_back(Json{{"kind", "block"},
                                    {"enter", run_json(blk.enter, alphabet, state_names)},
                                    {"loop", run_json(blk.loop, alphabet, state_names)},
                                    {"exit", run_json(blk.exit, alphabet, state_names)}});
        }
    }
    return segments;
}

Json witness_json(const sepa::Witness& w, const sepa::Nfa& a1, const sepa::Nfa& a2,
                  bool with_paths) {
    Json out;
    Json u = Json::array();
    for (const auto& word : w.pair.u) u.push_back(word_names(word, w.alphabet));
    Json b = Json::array();
    for (const auto& set : w.pair.b) b.push_back(set_names(set, w.alphabet));
    out["u"] = u;
    out["B"] = b;
    if (with_paths) {
        out["path1"] = side_json(w.side1, w.alphabet, a1.state_names);
        out["path2"] = side_json(w.side2, w.alphabet, a2.state_names);
    }
    return out;
}

// One dot chain per side, loop drawn as a back edge at its anchor.
std::string witness_dot(const sepa::Witness& w, const sepa::Nfa& a1, const sepa::Nfa& a2) {
    std::ostringstream out;
    out << "digraph \"witness\" {\n  rankdir=LR;\n";
    auto spell = [&](const sepa::Word& word) {
        std::string text;
        for (sepa::SymbolId s : word) {
            if (!text.empty()) text += " ";
            text += w.alphabet.name(s);
        }
        return text.empty() ? std::string("(empty)") : text;
    };
    auto side = [&](const sepa::WitnessSide& s, const sepa::Nfa& a, int idx) {
        out << "  subgraph cluster_side" << idx << " {\n    label=\"side" << idx << "\";\n";
        int node = 0;
        auto fresh = [&](sepa::StateId q) {
            out << "    s" << idx << "_" << node << " [label=\"" << a.state_names[static_cast<std::size_t>(q)]
                << "\"];\n";
            return node++;
        };
        auto edge = [&](int from, int to, const std::string& label, bool bold) {
            out << "    s" << idx << "_" << from << " -> s" << idx << "_" << to << " [label=\"" << label
                << "\"" << (bold ? ", style=bold" : "") << "];\n";
        };
        int cur = fresh(s.u_runs.front().states.front());
        for (std::size_t i = 0; i < s.u_runs.size(); ++i) {
            const auto& run = s.u_runs[i];
            if (!run.labels.empty()) {
                int next = fresh(run.states.back());
                edge(cur, next, spell(run.labels), false);
                cur = next;
            }
            if (i < s.blocks.size()) {
                const auto& blk = s.blocks[i];
                if (!blk.enter.labels.empty()) {
                    int next = fresh(blk.enter.states.back());
                    edge(cur, next, spell(blk.enter.labels), false);
                    cur = next;
                }
                edge(cur, cur, spell(blk.loop.labels), true);
                if (!blk.exit.labels.empty()) {
                    int next = fresh(blk.exit.states.back());
                    edge(cur, next, spell(blk.exit.labels), false);
                    cur = next;
                }
            }
        }
        out << "  }\n";
    };
    side(w.side1, a1, 1);
    side(w.side2, a2, 2);
    out << "}\n";
    return out.str();
}

std::optional<std::string> pt_bound_string(const sepa::Nfa& a1, const sepa::Nfa& a2) {
    const sepa::Alphabet joint = sepa::join_alphabets(a1.alphabet, a2.alphabet);
    try {
        return sepa::kappa_bound(a1.num_states(), a2.num_states(), joint.size()).str();
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

}  // namespace

int run_pt_separate(const std::string& in1, const std::string& in2,
                    const CommonOptions& common, bool with_witness, int pump_kappa) {
    return run_guarded("pt-separate", common, [&](Json& report) {
        const sepa::Nfa a1 = load_input(in1);
        const sepa::Nfa a2 = load_input(in2);
        report["inputs"] = Json::array({input_entry(in1, a1), input_entry(in2, a2)});
        emit_dot(common, "a1", sepa::to_dot(a1, "a1"));
        emit_dot(common, "a2", sepa::to_dot(a2, "a2"));

        const sepa::PtVerdict verdict = sepa::decide_pt_separable(a1, a2);
        Json v;
        v["separable"] = verdict.separable;
        if (verdict.witness) {
            v["witness"] = witness_json(*verdict.witness, a1, a2, with_witness);
            emit_dot(common, "witness", witness_dot(*verdict.witness, a1, a2));
        } else {
            v["witness"] = nullptr;
        }
        if (auto bound = pt_bound_string(a1, a2)) {
            v["kappa_bound"] = *bound;
        } else {
            v["kappa_bound"] = nullptr;
        }
        report["verdict"] = v;

        if (pump_kappa >= 0 && verdict.witness) {
            const auto [w1, w2] = sepa::pump_witness(*verdict.witness, pump_kappa);
            const sepa::Alphabet& joint = verdict.witness->alphabet;
            const sepa::Nfa b1 = sepa::with_alphabet(a1, joint);
            const sepa::Nfa b2 = sepa::with_alphabet(a2, joint);
            Json pump;
            pump["kappa"] = pump_kappa;
            pump["word1"] = word_names(w1, joint);
            pump["word2"] = word_names(w2, joint);
            pump["accepted1"] = sepa::accepts(b1, w1);
            pump["accepted2"] = sepa::accepts(b2, w2);
            pump["kpeq"] = sepa::kpeq(w1, w2, pump_kappa);
            report["pump"] = pump;
        }
        return kExitOk;
    });
}

int run_pt_min_kappa(const std::string& in1, const std::string& in2,
                     const CommonOptions& common, int kappa_max) {
    return run_guarded("pt-min-kappa", common, [&](Json& report) {
        const sepa::Nfa a1 = load_input(in1);
        const sepa::Nfa a2 = load_input(in2);
        report["inputs"] = Json::array({input_entry(in1, a1), input_entry(in2, a2)});
        emit_dot(common, "a1", sepa::to_dot(a1, "a1"));
        emit_dot(common, "a2", sepa::to_dot(a2, "a2"));

        Json v;
        const auto kappa = sepa::min_kappa(a1, a2, kappa_max, common.budget);
        if (kappa) {
            const auto sep = sepa::separator_dfa(a1, *kappa, common.budget);
            v["kappa"] = *kappa;
            v["num_abstractions"] = sep.num_abstractions;
            v["separator"] = Json::parse(sepa::dfa_to_json(sep.dfa));
            emit_dot(common, "separator", sepa::to_dot(sepa::to_nfa(sep.dfa), "separator"));
        } else {
            v["kappa"] = nullptr;
            v["ptime_separable"] = sepa::decide_pt_separable(a1, a2).separable;
        }
        report["verdict"] = v;
        return kExitOk;
    });
}

int run_pt_separator(const std::string& in1, const CommonOptions& common, int kappa) {
    return run_guarded("pt-separator", common, [&](Json& report) {
        const sepa::Nfa a1 = load_input(in1);
        report["inputs"] = Json::array({input_entry(in1, a1)});
        emit_dot(common, "a1", sepa::to_dot(a1, "a1"));

        const auto sep = sepa::separator_dfa(a1, kappa, common.budget);
        Json v;
        v["kappa"] = kappa;
        v["num_abstractions"] = sep.num_abstractions;
        v["states"] = sep.dfa.num_states();
        v["automaton"] = Json::parse(sepa::dfa_to_json(sep.dfa));
        report["verdict"] = v;
        emit_dot(common, "separator", sepa::to_dot(sepa::to_nfa(sep.dfa), "separator"));
        return kExitOk;
    });
}

int run_ul_separate(const std::string& in1, const std::string& in2,
                    const CommonOptions& common, int kappa_max) {
    return run_guarded("ul-separate", common, [&](Json& report) {
        const sepa::Nfa a1 = load_input(in1);
        const sepa::Nfa a2 = load_input(in2);
        report["inputs"] = Json::array({input_entry(in1, a1), input_entry(in2, a2)});
        emit_dot(common, "a1", sepa::to_dot(a1, "a1"));
        emit_dot(common, "a2", sepa::to_dot(a2, "a2"));

        const sepa::UlVerdict verdict = sepa::decide_ul_separable(a1, a2, kappa_max, common.budget);
        Json v;
        switch (verdict.status) {
            case sepa::UlStatus::separable_at:
                v["verdict"] = "separable_at";
                break;
            case sepa::UlStatus::not_separable_up_to:
                v["verdict"] = "not_separable_up_to";
                break;
            case sepa::UlStatus::definitive_not_separable:
                v["verdict"] = "definitive_not_separable";
                break;
        }
        v["kappa"] = verdict.kappa;
        v["kappa_bound"] = verdict.kappa_bound.str();
        v["monoid_sizes"] = Json::array({verdict.m1, verdict.m2});
        report["verdict"] = v;
        return kExitOk;
    });
}

int run_bounds(const std::string& in1, const std::string& in2,
               const CommonOptions& common) {
    return run_guarded("bounds", common, [&](Json& report) {
        const sepa::Nfa a1 = load_input(in1);
        const sepa::Nfa a2 = load_input(in2);
        report["inputs"] = Json::array({input_entry(in1, a1), input_entry(in2, a2)});

        const sepa::Alphabet joint = sepa::join_alphabets(a1.alphabet, a2.alphabet);
        const int m1 = sepa::transition_monoid(
                           sepa::minimize(sepa::determinize(sepa::with_alphabet(a1, joint))))
                           .size();
        const int m2 = sepa::transition_monoid(
                           sepa::minimize(sepa::determinize(sepa::with_alphabet(a2, joint))))
                           .size();
        Json v;
        if (auto bound = pt_bound_string(a1, a2)) {
            v["pt_bound"] = *bound;
        } else {
            v["pt_bound"] = nullptr;
        }
        v["ul_bound"] = sepa::ul_kappa_bound(m1, m2, joint.size()).str();
        v["state_counts"] = Json::array({a1.num_states(), a2.num_states()});
        v["monoid_sizes"] = Json::array({m1, m2});
        v["alphabet_size"] = joint.size();
        report["verdict"] = v;
        return kExitOk;
    });
}

int run_monoid(const std::string& in1, const CommonOptions& common) {
    return run_guarded("monoid", common, [&](Json& report) {
        const sepa::Nfa a1 = load_input(in1);
        report["inputs"] = Json::array({input_entry(in1, a1)});
        emit_dot(common, "a1", sepa::to_dot(a1, "a1"));

        const sepa::FiniteMonoid m = sepa::transition_monoid(sepa::minimize(sepa::determinize(a1)));
        Json v;
        v["size"] = m.size();
        v["monoid"] = Json::parse(sepa::monoid_to_json(m));
        report["verdict"] = v;
        return kExitOk;
    });
}

namespace {

// Reproducible small instance generator; draws use explicit modulo so the
// stream is identical across platforms.
sepa::Nfa random_nfa(std::mt19937_64& g) {
    static const std::vector<std::string> kNames = {"a", "b", "c"};
    const int n = 1 + static_cast<int>(g() % 4);
    const int m = 1 + static_cast<int>(g() % 3);

    sepa::Nfa a;
    a.alphabet = sepa::Alphabet(
        std::vector<std::string>(kNames.begin(), kNames.begin() + m));
    for (int q = 0; q < n; ++q) a.state_names.push_back("s" + std::to_string(q));
    for (int q = 0; q < n; ++q) {
        for (int s = 0; s < m; ++s) {
            for (int t = 0; t < n; ++t) {
                if (g() % 3 == 0) a.transitions.push_back({q, s, t});
            }
        }
    }
    for (int q = 0; q < n; ++q) {
        if (g() % 2 == 0) a.initial.push_back(q);
    }
    if (a.initial.empty()) a.initial.push_back(static_cast<int>(g() % n));
    for (int q = 0; q < n; ++q) {
        if (g() % 2 == 0) a.final.push_back(q);
    }
    return a;
}

}  // namespace

int run_selfcheck(const CommonOptions& common, std::uint64_t seed, int pairs) {
    return run_guarded("selfcheck", common, [&](Json& report) {
        report["inputs"] = Json::array();
        std::mt19937_64 g(seed);
        int violations = 0;
        int budget_skips = 0;
        int not_separable = 0;
        int separable_with_kappa = 0;
        std::vector<std::string> failures;

        auto flag = [&](int pair_index, const std::string& what) {
            ++violations;
            if (failures.size() < 10) {
                failures.push_back("pair " + std::to_string(pair_index) + ": " + what);
            }
        };

        for (int i = 0; i < pairs; ++i) {
            const sepa::Nfa a1 = random_nfa(g);
            const sepa::Nfa a2 = random_nfa(g);

            const auto verdict = sepa::decide_pt_separable(a1, a2);
            const auto mirrored = sepa::decide_pt_separable(a2, a1);
            if (verdict.separable != mirrored.separable) {
                flag(i, "verdict is not symmetric");
            }

            if (!verdict.separable) {
                ++not_separable;
                if (!verdict.witness || !sepa::verify_witness(*verdict.witness, a1, a2)) {
                    flag(i, "witness fails verification");
                } else {
                    const auto [w1, w2] = sepa::pump_witness(*verdict.witness, 2);
                    const auto& joint = verdict.witness->alphabet;
                    if (!sepa::accepts(sepa::with_alphabet(a1, joint), w1) ||
                        !sepa::accepts(sepa::with_alphabet(a2, joint), w2) ||
                        !sepa::kpeq(w1, w2, 2)) {
                        flag(i, "pumped pair fails acceptance or equivalence");
                    }
                }
            }

            try {
                const auto kappa = sepa::min_kappa(a1, a2, 3, common.budget);
                if (kappa) {
                    ++separable_with_kappa;
                    if (!verdict.separable) {
                        flag(i, "abstraction disjointness contradicts the decision");
                    }
                    const auto sep = sepa::separator_dfa(a1, *kappa, common.budget);
                    const bool covers = sepa::is_empty(
                        sepa::product(a1, sepa::to_nfa(sepa::complement(sep.dfa))));
                    const bool avoids =
                        sepa::is_empty(sepa::product(a2, sepa::to_nfa(sep.dfa)));
                    if (!covers || !avoids) flag(i, "separator automaton is not a separator");
                }
            } catch (const sepa::BudgetExceededError&) {
                ++budget_skips;
            }
        }

        Json v;
        v["seed"] = seed;
        v["pairs"] = pairs;
        v["violations"] = violations;
        v["budget_skips"] = budget_skips;
        v["not_separable"] = not_separable;
        v["separable_with_kappa"] = separable_with_kappa;
        if (!failures.empty()) v["failures"] = failures;
        report["verdict"] = v;
        return violations == 0 ? kExitOk : kExitInternal;
    });
}

}  // namespace sepa_cli
