#include "tension/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace tension {

// ── AST nodes ───────────────────────────────────────────────────────────────

struct Formula::Node {
    Connective kind;
    TimedAtom atom;   // Atom only
    Formula lhs;      // Not: the child; binary: left
    Formula rhs;      // binary: right

    Node(Connective k, TimedAtom a, Formula l, Formula r)
        : kind(k), atom(std::move(a)), lhs(std::move(l)), rhs(std::move(r)) {}
};

Formula::Formula() : node_(nullptr) { *this = top(); }

Formula Formula::atom(TimedAtom a) {
    return Formula(std::make_shared<const Node>(Connective::Atom, std::move(a),
                                                Formula(nullptr), Formula(nullptr)));
}

Formula Formula::atom(std::string name, int time) {
    return atom(TimedAtom{std::move(name), time});
}

Formula Formula::top() {
    return Formula(std::make_shared<const Node>(Connective::Top, TimedAtom{},
                                                Formula(nullptr), Formula(nullptr)));
}

Formula Formula::bottom() {
    return Formula(std::make_shared<const Node>(Connective::Bottom, TimedAtom{},
                                                Formula(nullptr), Formula(nullptr)));
}

Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<const Node>(Connective::Not, TimedAtom{},
                                                std::move(f), Formula(nullptr)));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Connective::And, TimedAtom{},
                                                std::move(lhs), std::move(rhs)));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Connective::Or, TimedAtom{},
                                                std::move(lhs), std::move(rhs)));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Connective::Implies, TimedAtom{},
                                                std::move(lhs), std::move(rhs)));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Connective::Iff, TimedAtom{},
                                                std::move(lhs), std::move(rhs)));
}

Connective Formula::kind() const { return node_->kind; }

const TimedAtom& Formula::atom_ref() const { return node_->atom; }

const Formula& Formula::left() const { return node_->lhs; }

const Formula& Formula::right() const { return node_->rhs; }

namespace {

void print_into(const Formula& f, std::string& out) {
    switch (f.kind()) {
        case Connective::Atom:
            out += f.atom_ref().name;
            out += '@';
            out += std::to_string(f.atom_ref().time);
            return;
        case Connective::Top:
            out += "true";
            return;
        case Connective::Bottom:
            out += "false";
            return;
        case Connective::Not:
            out += '!';
            print_into(f.left(), out);
            return;
        case Connective::And:
        case Connective::Or:
        case Connective::Implies:
        case Connective::Iff: {
            const char* op = f.kind() == Connective::And       ? " & "
                             : f.kind() == Connective::Or      ? " | "
                             : f.kind() == Connective::Implies ? " -> "
                                                               : " <-> ";
            out += '(';
            print_into(f.left(), out);
            out += op;
            print_into(f.right(), out);
            out += ')';
            return;
        }
    }
}

} // namespace

std::string Formula::str() const {
    std::string out;
    print_into(*this, out);
    return out;
}

namespace {

void collect_atoms(const Formula& f, std::set<TimedAtom>& out) {
    switch (f.kind()) {
        case Connective::Atom:
            out.insert(f.atom_ref());
            return;
        case Connective::Top:
        case Connective::Bottom:
            return;
        case Connective::Not:
            collect_atoms(f.left(), out);
            return;
        default:
            collect_atoms(f.left(), out);
            collect_atoms(f.right(), out);
            return;
    }
}

} // namespace

std::set<TimedAtom> Formula::atoms() const {
    std::set<TimedAtom> out;
    collect_atoms(*this, out);
    return out;
}

std::set<std::string> Formula::names() const {
    std::set<std::string> out;
    for (const TimedAtom& a : atoms()) out.insert(a.name);
    return out;
}

int Formula::max_time() const {
    int t = -1;
    for (const TimedAtom& a : atoms()) t = std::max(t, a.time);
    return t;
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case Connective::Atom:
            return atom_ref() == other.atom_ref();
        case Connective::Top:
        case Connective::Bottom:
            return true;
        case Connective::Not:
            return left() == other.left();
        default:
            return left() == other.left() && right() == other.right();
    }
}

Formula conjoin(const std::vector<Formula>& formulas) {
    if (formulas.empty()) return Formula::top();
    Formula acc = formulas.front();
    for (std::size_t i = 1; i < formulas.size(); ++i)
        acc = Formula::conjunction(std::move(acc), formulas[i]);
    return acc;
}

// ── Parser ──────────────────────────────────────────────────────────────────

namespace {

enum class TokKind {
    Ident,
    Int,
    At,
    Plus,
    Minus,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End
};

struct Token {
    TokKind kind;
    std::string text;
    long value = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= text_.size()) return {TokKind::End, "", 0, start};
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            std::string word(text_.substr(pos_, end - pos_));
            pos_ = end;
            return {TokKind::Ident, std::move(word), 0, start};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            long v = 0;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
                v = v * 10 + (text_[end] - '0');
                if (v > 1000000000) throw ParseError("time index out of range", start);
                ++end;
            }
            pos_ = end;
            return {TokKind::Int, std::string(text_.substr(start, end - start)), v, start};
        }
        switch (c) {
            case '@': ++pos_; return {TokKind::At, "@", 0, start};
            case '+': ++pos_; return {TokKind::Plus, "+", 0, start};
            case '!': ++pos_; return {TokKind::Not, "!", 0, start};
            case '&': ++pos_; return {TokKind::And, "&", 0, start};
            case '|': ++pos_; return {TokKind::Or, "|", 0, start};
            case '(': ++pos_; return {TokKind::LParen, "(", 0, start};
            case ')': ++pos_; return {TokKind::RParen, ")", 0, start};
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    pos_ += 2;
                    return {TokKind::Implies, "->", 0, start};
                }
                ++pos_;
                return {TokKind::Minus, "-", 0, start};
            case '<':
                if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
                    pos_ += 3;
                    return {TokKind::Iff, "<->", 0, start};
                }
                break;
            default:
                break;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& options)
        : lexer_(text), options_(options) {
        advance();
    }

    Formula parse_all() {
        Formula f = parse_iff();
        if (current_.kind != TokKind::End)
            throw ParseError("unexpected token '" + current_.text + "'", current_.pos);
        return f;
    }

private:
    void advance() { current_ = lexer_.next(); }

    bool accept(TokKind k) {
        if (current_.kind != k) return false;
        advance();
        return true;
    }

    void expect(TokKind k, const char* what) {
        if (current_.kind != k)
            throw ParseError(std::string("expected ") + what, current_.pos);
        advance();
    }

    Formula parse_iff() {
        Formula lhs = parse_implies();
        while (accept(TokKind::Iff)) lhs = Formula::equivalence(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (accept(TokKind::Implies))
            return Formula::implication(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        Formula lhs = parse_and();
        while (accept(TokKind::Or)) lhs = Formula::disjunction(std::move(lhs), parse_and());
        return lhs;
    }

    Formula parse_and() {
        Formula lhs = parse_unary();
        while (accept(TokKind::And)) lhs = Formula::conjunction(std::move(lhs), parse_unary());
        return lhs;
    }

    Formula parse_unary() {
        if (accept(TokKind::Not)) return Formula::negation(parse_unary());
        return parse_primary();
    }

    Formula parse_primary() {
        if (accept(TokKind::LParen)) {
            Formula f = parse_iff();
            expect(TokKind::RParen, "')'");
            return f;
        }
        if (current_.kind == TokKind::Ident) {
            Token name = current_;
            advance();
            if (name.text == "true") return Formula::top();
            if (name.text == "false") return Formula::bottom();
            if (options_.template_mode) {
                if (current_.kind == TokKind::At)
                    throw ParseError("time index not allowed in a fluent template", current_.pos);
                return Formula::atom(name.text, 0);
            }
            expect(TokKind::At, "'@' with a time index");
            int t = parse_time_index();
            return Formula::atom(name.text, t);
        }
        throw ParseError("expected a formula", current_.pos);
    }

    int parse_time_index() {
        Token tok = current_;
        long t = 0;
        if (tok.kind == TokKind::Int) {
            t = tok.value;
            advance();
        } else if (tok.kind == TokKind::Ident) {
            if (options_.time_bindings == nullptr)
                throw ParseError("unbound time variable '" + tok.text + "'", tok.pos);
            auto it = options_.time_bindings->find(tok.text);
            if (it == options_.time_bindings->end())
                throw ParseError("unbound time variable '" + tok.text + "'", tok.pos);
            advance();
            t = it->second;
            if (current_.kind == TokKind::Plus || current_.kind == TokKind::Minus) {
                bool neg = current_.kind == TokKind::Minus;
                advance();
                if (current_.kind != TokKind::Int)
                    throw ParseError("expected an integer offset", current_.pos);
                t += neg ? -current_.value : current_.value;
                advance();
            }
        } else {
            throw ParseError("expected a time index", tok.pos);
        }
        if (t < 0 || (options_.horizon && t > *options_.horizon))
            throw ParseError("time index " + std::to_string(t) + " outside [0, " +
                                 (options_.horizon ? std::to_string(*options_.horizon) : "inf") +
                                 "]",
                             tok.pos);
        return static_cast<int>(t);
    }

    Lexer lexer_;
    Token current_;
    ParseOptions options_;
};

} // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
    return Parser(text, options).parse_all();
}

Formula parse(std::string_view text, int horizon) {
    ParseOptions options;
    options.horizon = horizon;
    return parse(text, options);
}

// ── Interpretations ─────────────────────────────────────────────────────────

bool Interpretation::value(const TimedAtom& a) const {
    auto it = assignment_.find(a);
    if (it == assignment_.end())
        throw Error("atom " + a.str() + " is outside the interpretation vocabulary");
    return it->second;
}

bool Interpretation::satisfies(const Formula& f) const {
    switch (f.kind()) {
        case Connective::Atom: return value(f.atom_ref());
        case Connective::Top: return true;
        case Connective::Bottom: return false;
        case Connective::Not: return !satisfies(f.left());
        case Connective::And: return satisfies(f.left()) && satisfies(f.right());
        case Connective::Or: return satisfies(f.left()) || satisfies(f.right());
        case Connective::Implies: return !satisfies(f.left()) || satisfies(f.right());
        case Connective::Iff: return satisfies(f.left()) == satisfies(f.right());
    }
    throw Error("corrupt formula node");
}

std::vector<Interpretation> models(const Formula& f,
                                   const std::set<TimedAtom>& vocab,
                                   const ModelsOptions& options) {
    for (const TimedAtom& a : f.atoms())
        if (!vocab.contains(a))
            throw Error("formula atom " + a.str() + " not in the enumeration vocabulary");
    if (vocab.size() > options.max_vocab)
        throw Error("vocabulary of " + std::to_string(vocab.size()) +
                    " atoms exceeds the brute-force cap of " + std::to_string(options.max_vocab));

    std::vector<TimedAtom> order(vocab.begin(), vocab.end());
    std::vector<Interpretation> out;
    const std::uint64_t limit = std::uint64_t{1} << order.size();
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        std::map<TimedAtom, bool> assignment;
        for (std::size_t i = 0; i < order.size(); ++i)
            assignment[order[i]] = (bits >> i) & 1;
        Interpretation omega(std::move(assignment));
        if (omega.satisfies(f)) out.push_back(std::move(omega));
    }
    return out;
}

} // namespace tension
