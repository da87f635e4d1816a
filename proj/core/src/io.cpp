#include "sepa/io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "sepa/errors.hpp"

namespace sepa {

namespace {

using json = nlohmann::ordered_json;

const json& require_field(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw SchemaError(std::string("missing required field '") + key + "'");
    }
    return *it;
}

std::vector<std::string> string_array(const json& value, const char* what) {
    if (!value.is_array()) {
        throw SchemaError(std::string(what) + " must be an array");
    }
    std::vector<std::string> out;
    for (const auto& item : value) {
        if (!item.is_string()) {
            throw SchemaError(std::string(what) + " entries must be strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

Nfa parse_nfa(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw SchemaError("document root must be an object");
    }

    auto alphabet_names = string_array(require_field(doc, "alphabet"), "alphabet");
    if (alphabet_names.empty()) {
        throw SchemaError("alphabet must be nonempty");
    }
    auto state_names = string_array(require_field(doc, "states"), "states");

    Nfa a;
    a.alphabet = Alphabet(alphabet_names);  // rejects duplicates and empties

    std::unordered_map<std::string, StateId> state_id;
    for (std::size_t i = 0; i < state_names.size(); ++i) {
        if (state_names[i].empty()) {
            throw SchemaError("state name at index " + std::to_string(i) + " is empty");
        }
        auto [it, inserted] = state_id.emplace(state_names[i], static_cast<StateId>(i));
        (void)it;
        if (!inserted) {
            throw SchemaError("duplicate state '" + state_names[i] + "'");
        }
    }
    a.state_names = state_names;

    auto resolve_state = [&](const std::string& name, const char* where) {
        auto it = state_id.find(name);
        if (it == state_id.end()) {
            throw SchemaError(std::string("unknown state '") + name + "' in " + where);
        }
        return it->second;
    };

    for (const auto& name : string_array(require_field(doc, "initial"), "initial")) {
        a.initial.push_back(resolve_state(name, "initial"));
    }
    for (const auto& name : string_array(require_field(doc, "final"), "final")) {
        a.final.push_back(resolve_state(name, "final"));
    }
    std::sort(a.initial.begin(), a.initial.end());
    a.initial.erase(std::unique(a.initial.begin(), a.initial.end()), a.initial.end());
    std::sort(a.final.begin(), a.final.end());
    a.final.erase(std::unique(a.final.begin(), a.final.end()), a.final.end());

    const json& trans = require_field(doc, "transitions");
    if (!trans.is_array()) {
        throw SchemaError("transitions must be an array");
    }
    for (const auto& row : trans) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_string() ||
            !row[1].is_string() || !row[2].is_string()) {
            throw SchemaError("each transition must be a [source, symbol, target] string triple");
        }
        StateId from = resolve_state(row[0].get<std::string>(), "transitions");
        auto sym = a.alphabet.find(row[1].get<std::string>());
        if (!sym) {
            throw SchemaError("unknown symbol '" + row[1].get<std::string>() + "' in transitions");
        }
        StateId to = resolve_state(row[2].get<std::string>(), "transitions");
        a.transitions.push_back({from, *sym, to});
    }
    std::sort(a.transitions.begin(), a.transitions.end());
    a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()),
                        a.transitions.end());
    return a;
}

std::string nfa_to_json(const Nfa& a) {
    json doc;
    doc["alphabet"] = a.alphabet.names();
    doc["states"] = a.state_names;
    json initial = json::array();
    for (StateId q : a.initial) initial.push_back(a.state_names[static_cast<std::size_t>(q)]);
    doc["initial"] = std::move(initial);
    json final_states = json::array();
    for (StateId q : a.final) final_states.push_back(a.state_names[static_cast<std::size_t>(q)]);
    doc["final"] = std::move(final_states);
    json trans = json::array();
    for (const auto& t : a.transitions) {
        trans.push_back(json::array({a.state_names[static_cast<std::size_t>(t.from)],
                                     a.alphabet.name(t.symbol),
                                     a.state_names[static_cast<std::size_t>(t.to)]}));
    }
    doc["transitions"] = std::move(trans);
    return doc.dump(2);
}

std::string dfa_to_json(const Dfa& d) { return nfa_to_json(to_nfa(d)); }

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string to_dot(const Nfa& a, const std::string& graph_name) {
    std::vector<std::string> names = a.state_names;
    std::sort(names.begin(), names.end());

    std::string out = "digraph \"" + dot_escape(graph_name) + "\" {\n  rankdir=LR;\n";
    std::vector<std::string> final_names;
    for (StateId q : a.final) final_names.push_back(a.state_names[static_cast<std::size_t>(q)]);
    for (const auto& n : names) {
        bool fin = std::find(final_names.begin(), final_names.end(), n) != final_names.end();
        out += "  \"" + dot_escape(n) + "\" [shape=" + (fin ? "doublecircle" : "circle") + "];\n";
    }
    std::vector<std::string> init_names;
    for (StateId q : a.initial) init_names.push_back(a.state_names[static_cast<std::size_t>(q)]);
    std::sort(init_names.begin(), init_names.end());
    for (std::size_t i = 0; i < init_names.size(); ++i) {
        out += "  \"__init" + std::to_string(i) + "\" [shape=point, label=\"\"];\n";
        out += "  \"__init" + std::to_string(i) + "\" -> \"" + dot_escape(init_names[i]) + "\";\n";
    }
    std::vector<std::array<std::string, 3>> edges;
    for (const auto& t : a.transitions) {
        edges.push_back({a.state_names[static_cast<std::size_t>(t.from)],
                         a.alphabet.name(t.symbol),
                         a.state_names[static_cast<std::size_t>(t.to)]});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
        out += "  \"" + dot_escape(e[0]) + "\" -> \"" + dot_escape(e[2]) + "\" [label=\"" +
               dot_escape(e[1]) + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace sepa
