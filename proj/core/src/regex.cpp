#include "sepa/regex.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <string>

#include "sepa/errors.hpp"

namespace sepa {

namespace {

bool is_meta(char c) {
    return c == '|' || c == '(' || c == ')' || c == '*' || c == '+';
}

struct Node {
    enum class Kind { literal, epsilon, concat, alt, star, plus } kind;
    int position = -1;  // literal occurrence index
    char letter = 0;
    std::unique_ptr<Node> left, right;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
  public:
    Parser(std::string_view text, std::vector<char>& letters)
        : text_(text), letters_(letters) {}

    NodePtr run() {
        if (text_.empty()) throw ParseError("empty expression", 0);
        NodePtr e = expr();
        if (pos_ < text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return e;
    }

  private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    bool at_end() const { return pos_ >= text_.size(); }

    NodePtr expr() {
        NodePtr e = term();
        while (peek() == '|') {
            ++pos_;
            NodePtr rhs = term();
            NodePtr alt = std::make_unique<Node>();
            alt->kind = Node::Kind::alt;
            alt->left = std::move(e);
            alt->right = std::move(rhs);
            e = std::move(alt);
        }
        return e;
    }

    NodePtr term() {
        NodePtr e = factor();
        while (!at_end() && peek() != '|' && peek() != ')') {
            NodePtr rhs = factor();
            NodePtr cat = std::make_unique<Node>();
            cat->kind = Node::Kind::concat;
            cat->left = std::move(e);
            cat->right = std::move(rhs);
            e = std::move(cat);
        }
        return e;
    }

    NodePtr factor() {
        NodePtr e = atom();
        if (peek() == '*' || peek() == '+') {
            NodePtr rep = std::make_unique<Node>();
            rep->kind = peek() == '*' ? Node::Kind::star : Node::Kind::plus;
            rep->left = std::move(e);
            ++pos_;
            return rep;
        }
        return e;
    }

    NodePtr atom() {
        if (at_end()) throw ParseError("expected atom at end of input", pos_);
        char c = peek();
        if (c == '(') {
            std::size_t open = pos_;
            ++pos_;
            if (peek() == ')') {  // '()' is the empty word
                ++pos_;
                NodePtr eps = std::make_unique<Node>();
                eps->kind = Node::Kind::epsilon;
                return eps;
            }
            NodePtr e = expr();
            if (peek() != ')') {
                throw ParseError("unbalanced '('", open);
            }
            ++pos_;
            return e;
        }
        if (is_meta(c)) {
            throw ParseError(std::string("unexpected '") + c + "'", pos_);
        }
        NodePtr lit = std::make_unique<Node>();
        lit->kind = Node::Kind::literal;
        lit->letter = c;
        lit->position = static_cast<int>(letters_.size());
        letters_.push_back(c);
        ++pos_;
        return lit;
    }

    std::string_view text_;
    std::vector<char>& letters_;
    std::size_t pos_ = 0;
};

struct Sets {
    bool nullable = false;
    std::set<int> first, last;
};

Sets analyze(const Node& n, std::vector<std::set<int>>& follow) {
    switch (n.kind) {
        case Node::Kind::literal: {
            Sets s;
            s.first = {n.position};
            s.last = {n.position};
            return s;
        }
        case Node::Kind::epsilon: {
            Sets s;
            s.nullable = true;
            return s;
        }
        case Node::Kind::alt: {
            Sets l = analyze(*n.left, follow);
            Sets r = analyze(*n.right, follow);
            Sets s;
            s.nullable = l.nullable || r.nullable;
            s.first = std::move(l.first);
            s.first.insert(r.first.begin(), r.first.end());
            s.last = std::move(l.last);
            s.last.insert(r.last.begin(), r.last.end());
            return s;
        }
        case Node::Kind::concat: {
            Sets l = analyze(*n.left, follow);
            Sets r = analyze(*n.right, follow);
            for (int p : l.last) {
                follow[static_cast<std::size_t>(p)].insert(r.first.begin(), r.first.end());
            }
            Sets s;
            s.nullable = l.nullable && r.nullable;
            s.first = l.first;
            if (l.nullable) s.first.insert(r.first.begin(), r.first.end());
            s.last = r.last;
            if (r.nullable) s.last.insert(l.last.begin(), l.last.end());
            return s;
        }
        case Node::Kind::star:
        case Node::Kind::plus: {
            Sets x = analyze(*n.left, follow);
            for (int p : x.last) {
                follow[static_cast<std::size_t>(p)].insert(x.first.begin(), x.first.end());
            }
            Sets s;
            s.nullable = n.kind == Node::Kind::star || x.nullable;
            s.first = std::move(x.first);
            s.last = std::move(x.last);
            return s;
        }
    }
    throw Error("unreachable");
}

}  // namespace

Nfa regex_to_nfa(std::string_view pattern) {
    std::vector<char> letters;  // letter of each position, in occurrence order
    Parser parser(pattern, letters);
    NodePtr root = parser.run();

    std::vector<std::set<int>> follow(letters.size());
    Sets top = analyze(*root, follow);

    // Symbols intern in first-appearance order.
    std::vector<std::string> symbol_names;
    std::vector<SymbolId> symbol_of_position(letters.size());
    for (std::size_t p = 0; p < letters.size(); ++p) {
        std::string name(1, letters[p]);
        auto it = std::find(symbol_names.begin(), symbol_names.end(), name);
        if (it == symbol_names.end()) {
            symbol_of_position[p] = static_cast<SymbolId>(symbol_names.size());
            symbol_names.push_back(name);
        } else {
            symbol_of_position[p] = static_cast<SymbolId>(it - symbol_names.begin());
        }
    }

    Nfa a;
    a.alphabet = Alphabet(symbol_names);
    a.state_names.push_back("q0");  // start state, position states follow
    for (std::size_t p = 0; p < letters.size(); ++p) {
        a.state_names.push_back("q" + std::to_string(p + 1));
    }
    a.initial = {0};
    if (top.nullable) a.final.push_back(0);
    for (int p : top.last) a.final.push_back(static_cast<StateId>(p + 1));
    std::sort(a.final.begin(), a.final.end());
    a.final.erase(std::unique(a.final.begin(), a.final.end()), a.final.end());

    for (int p : top.first) {
        a.transitions.push_back({0, symbol_of_position[static_cast<std::size_t>(p)],
                                 static_cast<StateId>(p + 1)});
    }
    for (std::size_t p = 0; p < follow.size(); ++p) {
        for (int q : follow[p]) {
            a.transitions.push_back({static_cast<StateId>(p + 1),
                                     symbol_of_position[static_cast<std::size_t>(q)],
                                     static_cast<StateId>(q + 1)});
        }
    }
    std::sort(a.transitions.begin(), a.transitions.end());
    a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()), a.transitions.end());
    return a;
}

}  // namespace sepa
