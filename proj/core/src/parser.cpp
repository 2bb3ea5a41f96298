// parser.cpp - lexer and recursive-descent parsers for .onto / .inst / .refmap
#include "onto/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace onto {

namespace {

enum class TokKind {
    ident,
    string,
    integer,
    star,
    lbracket,
    rbracket,
    lbrace,
    rbrace,
    lparen,
    rparen,
    colon,
    comma,
    dot,
    dotdot,
    arrow,
    amp,
    end,
    bad
};

struct Token {
    TokKind kind = TokKind::end;
    std::string text;  // ident/keyword text, decoded string value, or raw punct
    int line = 1;
    int column = 1;
    int length = 0;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    const std::string& file() const { return file_; }

    std::vector<Token> run(std::vector<ParseDiagnostic>& diags) {
        std::vector<Token> tokens;
        while (true) {
            Token t = next(diags);
            bool at_end = t.kind == TokKind::end;
            tokens.push_back(std::move(t));
            if (at_end) break;
        }
        return tokens;
    }

private:
    Token next(std::vector<ParseDiagnostic>& diags) {
        skip_trivia();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) {
            t.kind = TokKind::end;
            return t;
        }
        char c = text_[pos_];
        if (c == '"') return lex_string(diags);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident();
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_integer();

        auto punct = [&](TokKind kind, int len, const char* text) {
            t.kind = kind;
            t.text = text;
            t.length = len;
            advance(len);
            return t;
        };
        switch (c) {
            case '*': return punct(TokKind::star, 1, "*");
            case '[': return punct(TokKind::lbracket, 1, "[");
            case ']': return punct(TokKind::rbracket, 1, "]");
            case '{': return punct(TokKind::lbrace, 1, "{");
            case '}': return punct(TokKind::rbrace, 1, "}");
            case '(': return punct(TokKind::lparen, 1, "(");
            case ')': return punct(TokKind::rparen, 1, ")");
            case ':': return punct(TokKind::colon, 1, ":");
            case ',': return punct(TokKind::comma, 1, ",");
            case '&': return punct(TokKind::amp, 1, "&");
            case '.':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '.')
                    return punct(TokKind::dotdot, 2, "..");
                return punct(TokKind::dot, 1, ".");
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')
                    return punct(TokKind::arrow, 2, "->");
                break;
            default: break;
        }
        t.kind = TokKind::bad;
        t.text = std::string(1, c);
        t.length = 1;
        diags.push_back({Severity::error, "LEX_ERROR",
                         "unexpected character '" + t.text + "'",
                         {file_, t.line, t.column, 1}});
        advance(1);
        return t;
    }

    Token lex_string(std::vector<ParseDiagnostic>& diags) {
        Token t;
        t.kind = TokKind::string;
        t.line = line_;
        t.column = column_;
        std::size_t start = pos_;
        advance(1);  // opening quote
        std::string value;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '"') {
                advance(1);
                t.text = std::move(value);
                t.length = static_cast<int>(pos_ - start);
                return t;
            }
            if (c == '\n') break;
            if (c == '\\' && pos_ + 1 < text_.size() &&
                (text_[pos_ + 1] == '"' || text_[pos_ + 1] == '\\')) {
                value.push_back(text_[pos_ + 1]);
                advance(2);
                continue;
            }
            value.push_back(c);
            advance(1);
        }
        t.kind = TokKind::bad;
        t.text = std::move(value);
        t.length = static_cast<int>(pos_ - start);
        diags.push_back({Severity::error, "LEX_ERROR", "unterminated string literal",
                         {file_, t.line, t.column, t.length}});
        return t;
    }

    Token lex_ident() {
        Token t;
        t.kind = TokKind::ident;
        t.line = line_;
        t.column = column_;
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
            advance(1);
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        t.length = static_cast<int>(pos_ - start);
        return t;
    }

    Token lex_integer() {
        Token t;
        t.kind = TokKind::integer;
        t.line = line_;
        t.column = column_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            advance(1);
        t.text = std::string(text_.substr(start, pos_ - start));
        t.length = static_cast<int>(pos_ - start);
        return t;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance(1);
            } else {
                break;
            }
        }
    }

    void advance(int n) {
        for (int i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

// Splits a leading parenthesized qualifier from an endpoint name:
// "(Power of) Thing" -> {"Thing", "(Power of)"}.
EndpointRef split_endpoint(const std::string& raw) {
    EndpointRef ref;
    if (!raw.empty() && raw.front() == '(') {
        auto close = raw.find(')');
        if (close != std::string::npos && close + 1 < raw.size() && raw[close + 1] == ' ') {
            std::string rest = raw.substr(close + 2);
            if (!rest.empty()) {
                ref.qualifier = raw.substr(0, close + 1);
                ref.term = std::move(rest);
                return ref;
            }
        }
    }
    ref.term = raw;
    return ref;
}

class Parser {
public:
    Parser(std::string_view text, std::string file)
        : file_(std::move(file)) {
        Lexer lexer(text, file_);
        tokens_ = lexer.run(diags_);
    }

    std::vector<ParseDiagnostic> take_diagnostics() { return std::move(diags_); }

    bool has_errors() const {
        return std::any_of(diags_.begin(), diags_.end(),
                           [](const ParseDiagnostic& d) { return d.severity == Severity::error; });
    }

protected:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    bool at_end() const { return peek().kind == TokKind::end; }

    bool is_keyword(std::string_view kw, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokKind::ident && t.text == kw;
    }

    SourceSpan span_of(const Token& t) const { return {file_, t.line, t.column, t.length}; }

    void error_at(const Token& t, std::string code, std::string message) {
        diags_.push_back({Severity::error, std::move(code), std::move(message), span_of(t)});
    }

    bool expect_keyword(std::string_view kw) {
        if (is_keyword(kw)) {
            advance();
            return true;
        }
        error_at(peek(), "SYNTAX_ERROR",
                 "expected '" + std::string(kw) + "', found " + describe(peek()));
        return false;
    }

    std::optional<std::string> expect_ident(std::string_view what) {
        if (peek().kind == TokKind::ident) return advance().text;
        error_at(peek(), "SYNTAX_ERROR",
                 "expected " + std::string(what) + ", found " + describe(peek()));
        return std::nullopt;
    }

    std::optional<std::string> expect_string(std::string_view what) {
        if (peek().kind == TokKind::string) return advance().text;
        error_at(peek(), "SYNTAX_ERROR",
                 "expected " + std::string(what) + " (quoted), found " + describe(peek()));
        return std::nullopt;
    }

    bool expect_punct(TokKind kind, std::string_view what) {
        if (peek().kind == kind) {
            advance();
            return true;
        }
        error_at(peek(), "SYNTAX_ERROR",
                 "expected '" + std::string(what) + "', found " + describe(peek()));
        return false;
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokKind::end: return "end of input";
            case TokKind::string: return "string \"" + t.text + "\"";
            case TokKind::bad: return "invalid input";
            default: return "'" + t.text + "'";
        }
    }

    // Skips to the next top-level keyword after a syntax error.
    void synchronize(const std::set<std::string>& keywords) {
        while (!at_end()) {
            if (peek().kind == TokKind::ident && keywords.count(peek().text)) return;
            advance();
        }
    }

    std::string file_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<ParseDiagnostic> diags_;
};

// ---------------------------------------------------------------------------
// .onto

const std::set<std::string> kOntoKeywords = {"import", "term",  "isa",  "genset",
                                             "rel",    "axiom", "ontology"};

class OntologyParser : public Parser {
public:
    using Parser::Parser;

    std::optional<Ontology> run() {
        if (at_end()) {
            error_at(peek(), "SYNTAX_ERROR", "expected 'ontology' header");
            return std::nullopt;
        }
        if (!parse_header()) return std::nullopt;
        while (!at_end()) {
            if (is_keyword("import")) parse_import();
            else if (is_keyword("term")) parse_term();
            else if (is_keyword("isa")) parse_isa();
            else if (is_keyword("genset")) parse_genset();
            else if (is_keyword("rel")) parse_rel();
            else if (is_keyword("axiom")) parse_axiom();
            else {
                error_at(peek(), "SYNTAX_ERROR",
                         "expected a declaration (import/term/isa/genset/rel/axiom), found " +
                             describe(peek()));
                advance();
                synchronize(kOntoKeywords);
            }
        }
        resolve_references();
        if (has_errors()) return std::nullopt;
        return std::move(onto_);
    }

private:
    bool parse_header() {
        if (!expect_keyword("ontology")) return false;
        auto name = expect_ident("ontology name");
        if (!name) return false;
        onto_.name = *name;
        if (!expect_keyword("version")) return false;
        auto version = expect_string("version string");
        if (!version) return false;
        onto_.version = *version;
        if (!expect_keyword("layer")) return false;
        return parse_layer_name(onto_.layer);
    }

    bool parse_layer_name(Layer& out) {
        const Token& t = peek();
        auto word = expect_ident("layer name");
        if (!word) return false;
        auto layer = parse_layer(*word);
        if (!layer) {
            error_at(t, "SYNTAX_ERROR", "unknown layer '" + *word + "'");
            return false;
        }
        out = *layer;
        return true;
    }

    void parse_import() {
        const Token& kw = advance();
        Import imp;
        imp.span = span_of(kw);
        auto name = expect_ident("imported ontology name");
        if (!name || !expect_keyword("layer") || !parse_layer_name(imp.layer)) {
            synchronize(kOntoKeywords);
            return;
        }
        imp.name = *name;
        if (is_keyword("optional")) {
            advance();
            imp.optional = true;
        }
        if (onto_.find_import(imp.name))
            error_at(kw, "DUPLICATE_IMPORT", "ontology '" + imp.name + "' imported twice");
        else
            onto_.imports.push_back(std::move(imp));
    }

    void parse_term() {
        advance();
        const Token& name_tok = peek();
        auto name = expect_string("term name");
        if (!name) {
            synchronize(kOntoKeywords);
            return;
        }
        Term term;
        term.name = *name;
        term.span = span_of(name_tok);
        while (true) {
            if (is_keyword("synonyms")) {
                advance();
                do {
                    auto syn = expect_string("synonym");
                    if (!syn) break;
                    term.synonyms.push_back(*syn);
                } while (peek().kind == TokKind::comma && (advance(), true));
            } else if (is_keyword("qualifier")) {
                advance();
                if (auto q = expect_string("qualifier")) term.qualifier = *q;
            } else if (is_keyword("reused")) {
                advance();
                term.origin = TermOrigin::reused;
            } else if (is_keyword("stereotype")) {
                advance();
                auto onto_name = expect_ident("ontology name");
                if (!onto_name || !expect_punct(TokKind::dot, ".")) break;
                auto tname = expect_string("term name");
                if (!tname) break;
                term.stereotype = TermRef{*onto_name, *tname};
            } else {
                break;
            }
        }
        if (term.origin == TermOrigin::reused && !term.stereotype)
            error_at(name_tok, "REUSED_WITHOUT_SOURCE",
                     "reused term \"" + term.name + "\" must name its source via 'stereotype'");
        for (const auto& existing : onto_.terms) {
            if (existing.name == term.name) {
                error_at(name_tok, "DUPLICATE_TERM",
                         "term \"" + term.name + "\" declared twice");
                return;
            }
        }
        onto_.terms.push_back(std::move(term));
    }

    void parse_isa() {
        const Token& kw = advance();
        auto child = expect_string("child term");
        if (!child || !expect_keyword("of")) {
            synchronize(kOntoKeywords);
            return;
        }
        auto parent = expect_string("parent term");
        if (!parent) {
            synchronize(kOntoKeywords);
            return;
        }
        TaxonomicLink link{*child, *parent, span_of(kw)};
        // is-a links are a set
        for (const auto& existing : onto_.taxonomy)
            if (existing == link) return;
        onto_.taxonomy.push_back(std::move(link));
    }

    void parse_genset() {
        const Token& kw = advance();
        GeneralizationSet gs;
        gs.span = span_of(kw);
        auto parent = expect_string("parent term");
        if (!parent || !expect_keyword("children")) {
            synchronize(kOntoKeywords);
            return;
        }
        gs.parent = *parent;
        do {
            const Token& child_tok = peek();
            auto child = expect_string("child term");
            if (!child) {
                synchronize(kOntoKeywords);
                return;
            }
            if (std::find(gs.children.begin(), gs.children.end(), *child) != gs.children.end())
                error_at(child_tok, "DUPLICATE_GENSET_CHILD",
                         "child \"" + *child + "\" listed twice in generalization set");
            else
                gs.children.push_back(*child);
        } while (peek().kind == TokKind::comma && (advance(), true));
        if (!expect_punct(TokKind::lbrace, "{")) {
            synchronize(kOntoKeywords);
            return;
        }
        const Token& comp_tok = peek();
        auto comp = expect_ident("completeness (complete|incomplete)");
        if (!comp) return;
        if (*comp == "complete") gs.completeness = Completeness::complete;
        else if (*comp == "incomplete") gs.completeness = Completeness::incomplete;
        else error_at(comp_tok, "SYNTAX_ERROR", "expected 'complete' or 'incomplete'");
        if (!expect_punct(TokKind::comma, ",")) return;
        const Token& disj_tok = peek();
        auto disj = expect_ident("disjointness (disjoint|overlapping)");
        if (!disj) return;
        if (*disj == "disjoint") gs.disjointness = Disjointness::disjoint;
        else if (*disj == "overlapping") gs.disjointness = Disjointness::overlapping;
        else error_at(disj_tok, "SYNTAX_ERROR", "expected 'disjoint' or 'overlapping'");
        if (!expect_punct(TokKind::rbrace, "}")) return;
        onto_.generalization_sets.push_back(std::move(gs));
    }

    std::optional<Multiplicity> parse_mult() {
        const Token& open = peek();
        if (!expect_punct(TokKind::lbracket, "[")) return std::nullopt;
        std::string token;
        while (peek().kind != TokKind::rbracket && !at_end() && peek().kind != TokKind::bad)
            token += advance().text;
        if (!expect_punct(TokKind::rbracket, "]")) return std::nullopt;
        std::string err;
        auto mult = parse_multiplicity(token, &err);
        if (!mult) {
            error_at(open, "MALFORMED_MULTIPLICITY", err);
            return std::nullopt;
        }
        return mult;
    }

    void parse_rel() {
        const Token& kw = advance();
        RelationshipDef rel;
        rel.span = span_of(kw);
        const Token& name_tok = peek();
        auto name = expect_string("relationship name");
        if (!name || !expect_keyword("from")) {
            synchronize(kOntoKeywords);
            return;
        }
        rel.name = *name;
        auto src = expect_string("source term");
        if (!src) {
            synchronize(kOntoKeywords);
            return;
        }
        rel.source = split_endpoint(*src);
        auto src_mult = parse_mult();
        if (!src_mult || !expect_keyword("to")) {
            synchronize(kOntoKeywords);
            return;
        }
        rel.source_mult = *src_mult;
        auto tgt = expect_string("target term");
        if (!tgt) {
            synchronize(kOntoKeywords);
            return;
        }
        rel.target = split_endpoint(*tgt);
        auto tgt_mult = parse_mult();
        if (!tgt_mult) {
            synchronize(kOntoKeywords);
            return;
        }
        rel.target_mult = *tgt_mult;
        if (is_keyword("definition")) {
            advance();
            if (auto def = expect_string("definition text")) rel.definition = *def;
        }
        for (const auto& existing : onto_.relationships) {
            if (existing.name == rel.name) {
                error_at(name_tok, "DUPLICATE_REL",
                         "relationship \"" + rel.name + "\" declared twice");
                return;
            }
        }
        onto_.relationships.push_back(std::move(rel));
    }

    std::optional<RelationAtom> parse_atom() {
        RelationAtom atom;
        auto rel = expect_string("relationship name");
        if (!rel || !expect_punct(TokKind::lparen, "(")) return std::nullopt;
        atom.relationship = *rel;
        auto lhs = expect_ident("variable");
        if (!lhs || !expect_punct(TokKind::comma, ",")) return std::nullopt;
        atom.lhs = *lhs;
        auto rhs = expect_ident("variable");
        if (!rhs || !expect_punct(TokKind::rparen, ")")) return std::nullopt;
        atom.rhs = *rhs;
        return atom;
    }

    bool parse_conjunction(std::vector<RelationAtom>& out) {
        do {
            auto atom = parse_atom();
            if (!atom) return false;
            out.push_back(std::move(*atom));
        } while (peek().kind == TokKind::amp && (advance(), true));
        return true;
    }

    void parse_axiom() {
        const Token& kw = advance();
        AxiomRule rule;
        rule.span = span_of(kw);
        const Token& id_tok = peek();
        auto id = expect_ident("axiom id");
        if (!id || !expect_keyword("forall")) {
            synchronize(kOntoKeywords);
            return;
        }
        rule.id = *id;
        std::set<std::string> vars;
        do {
            const Token& var_tok = peek();
            auto var = expect_ident("variable");
            if (!var || !expect_punct(TokKind::colon, ":")) {
                synchronize(kOntoKeywords);
                return;
            }
            auto guard = expect_string("guard term");
            if (!guard) {
                synchronize(kOntoKeywords);
                return;
            }
            if (!vars.insert(*var).second)
                error_at(var_tok, "DUPLICATE_VARIABLE",
                         "variable '" + *var + "' declared twice in axiom " + rule.id);
            rule.universals.push_back({*var, *guard});
        } while (peek().kind == TokKind::comma && (advance(), true));
        if (!expect_punct(TokKind::colon, ":")) {
            synchronize(kOntoKeywords);
            return;
        }
        if (!parse_conjunction(rule.body)) {
            synchronize(kOntoKeywords);
            return;
        }
        if (!expect_punct(TokKind::arrow, "->")) {
            synchronize(kOntoKeywords);
            return;
        }
        if (is_keyword("not")) {
            advance();
            auto atom = parse_atom();
            if (!atom) {
                synchronize(kOntoKeywords);
                return;
            }
            rule.head = NegatedHead{std::move(*atom)};
        } else if (is_keyword("exists")) {
            advance();
            ExistentialHead ex;
            const Token& var_tok = peek();
            auto var = expect_ident("variable");
            if (!var || !expect_punct(TokKind::colon, ":")) {
                synchronize(kOntoKeywords);
                return;
            }
            auto guard = expect_string("guard term");
            if (!guard || !expect_punct(TokKind::colon, ":")) {
                synchronize(kOntoKeywords);
                return;
            }
            ex.variable = *var;
            ex.guard = *guard;
            if (!vars.insert(ex.variable).second)
                error_at(var_tok, "DUPLICATE_VARIABLE",
                         "variable '" + ex.variable + "' shadows a universal in axiom " + rule.id);
            if (!parse_conjunction(ex.atoms)) {
                synchronize(kOntoKeywords);
                return;
            }
            rule.head = std::move(ex);
        } else {
            auto atom = parse_atom();
            if (!atom) {
                synchronize(kOntoKeywords);
                return;
            }
            rule.head = PositiveHead{std::move(*atom)};
        }
        check_axiom_vars(rule, id_tok);
        for (const auto& existing : onto_.axioms) {
            if (existing.id == rule.id) {
                error_at(id_tok, "DUPLICATE_AXIOM", "axiom " + rule.id + " declared twice");
                return;
            }
        }
        onto_.axioms.push_back(std::move(rule));
    }

    void check_axiom_vars(const AxiomRule& rule, const Token& at) {
        std::set<std::string> universals;
        for (const auto& u : rule.universals) universals.insert(u.variable);
        std::set<std::string> head_scope = universals;
        if (const auto* ex = std::get_if<ExistentialHead>(&rule.head))
            head_scope.insert(ex->variable);
        auto check = [&](const RelationAtom& atom, const std::set<std::string>& scope) {
            for (const auto* var : {&atom.lhs, &atom.rhs})
                if (!scope.count(*var))
                    error_at(at, "UNDECLARED_AXIOM_VARIABLE",
                             "axiom " + rule.id + " uses undeclared variable '" + *var + "'");
        };
        // The existential variable is visible in the head only.
        for (const auto& atom : rule.body) check(atom, universals);
        if (const auto* pos = std::get_if<PositiveHead>(&rule.head)) check(pos->atom, head_scope);
        if (const auto* neg = std::get_if<NegatedHead>(&rule.head)) check(neg->atom, head_scope);
        if (const auto* ex = std::get_if<ExistentialHead>(&rule.head))
            for (const auto& atom : ex->atoms) check(atom, head_scope);
    }

    // Local references are resolved after the whole file so declarations may
    // appear in any order. Synonyms are resolution aliases: a reference via
    // synonym is rewritten to the canonical term name here.
    void resolve_references() {
        std::set<std::string> term_names;
        std::unordered_map<std::string, std::vector<std::string>> by_synonym;
        for (const auto& t : onto_.terms) {
            term_names.insert(t.name);
            for (const auto& syn : t.synonyms) by_synonym[syn].push_back(t.name);
        }
        std::set<std::string> rel_names;
        for (const auto& r : onto_.relationships) rel_names.insert(r.name);

        for (const auto& t : onto_.terms) {
            for (const auto& syn : t.synonyms)
                if (term_names.count(syn))
                    error_at_span(t.span, "SYNONYM_COLLISION",
                                  "synonym \"" + syn + "\" of term \"" + t.name +
                                      "\" collides with a term name");
            if (t.stereotype && t.stereotype->ontology != onto_.name &&
                !onto_.find_import(t.stereotype->ontology))
                error_at_span(t.span, "UNRESOLVED_LOCAL_REF",
                              "stereotype of \"" + t.name + "\" references ontology '" +
                                  t.stereotype->ontology + "' which is not imported");
        }
        auto canonicalize = [&](std::string& name, const SourceSpan& span,
                                const std::string& context) {
            if (term_names.count(name)) return;
            auto it = by_synonym.find(name);
            if (it == by_synonym.end()) {
                error_at_span(span, "UNRESOLVED_LOCAL_REF",
                              context + " references unknown term \"" + name + "\"");
                return;
            }
            if (it->second.size() > 1) {
                error_at_span(span, "AMBIGUOUS_REF",
                              context + " references synonym \"" + name +
                                  "\" shared by several terms");
                return;
            }
            name = it->second.front();
        };
        for (auto& link : onto_.taxonomy) {
            canonicalize(link.child, link.span, "isa declaration");
            canonicalize(link.parent, link.span, "isa declaration");
        }
        for (auto& gs : onto_.generalization_sets) {
            canonicalize(gs.parent, gs.span, "generalization set");
            for (auto& child : gs.children) canonicalize(child, gs.span, "generalization set");
        }
        for (auto& rel : onto_.relationships) {
            canonicalize(rel.source.term, rel.span, "relationship \"" + rel.name + "\"");
            canonicalize(rel.target.term, rel.span, "relationship \"" + rel.name + "\"");
        }
        for (auto& rule : onto_.axioms) {
            for (auto& u : rule.universals)
                canonicalize(u.guard, rule.span, "axiom " + rule.id);
            if (auto* ex = std::get_if<ExistentialHead>(&rule.head))
                canonicalize(ex->guard, rule.span, "axiom " + rule.id);
            auto require_rel = [&](const RelationAtom& atom) {
                if (!rel_names.count(atom.relationship))
                    error_at_span(rule.span, "UNRESOLVED_LOCAL_REF",
                                  "axiom " + rule.id + " references unknown relationship \"" +
                                      atom.relationship + "\"");
            };
            for (const auto& atom : rule.body) require_rel(atom);
            if (const auto* pos = std::get_if<PositiveHead>(&rule.head)) require_rel(pos->atom);
            if (const auto* neg = std::get_if<NegatedHead>(&rule.head)) require_rel(neg->atom);
            if (const auto* ex = std::get_if<ExistentialHead>(&rule.head))
                for (const auto& atom : ex->atoms) require_rel(atom);
        }
    }

    void error_at_span(const SourceSpan& span, std::string code, std::string message) {
        diags_.push_back({Severity::error, std::move(code), std::move(message), span});
    }

    Ontology onto_;
};

// ---------------------------------------------------------------------------
// .inst

const std::set<std::string> kInstKeywords = {"model", "link"};

class InstanceParser : public Parser {
public:
    using Parser::Parser;

    std::optional<InstanceModel> run() {
        if (at_end()) {
            error_at(peek(), "SYNTAX_ERROR", "expected 'model' header");
            return std::nullopt;
        }
        if (!expect_keyword("model")) return std::nullopt;
        auto name = expect_ident("model id");
        if (!name || !expect_keyword("conforms")) return std::nullopt;
        model_.name = *name;
        auto onto_name = expect_ident("ontology name");
        if (!onto_name) return std::nullopt;
        model_.conforms_to = *onto_name;

        while (!at_end()) {
            if (is_keyword("link") && peek(1).kind == TokKind::string) parse_link();
            else if (peek().kind == TokKind::ident) parse_node();
            else {
                error_at(peek(), "SYNTAX_ERROR",
                         "expected a node or link declaration, found " + describe(peek()));
                advance();
            }
        }
        resolve_links();
        if (has_errors()) return std::nullopt;
        return std::move(model_);
    }

private:
    void parse_node() {
        const Token& id_tok = peek();
        std::string id = advance().text;
        if (!expect_punct(TokKind::colon, ":")) return;
        InstanceNode node;
        node.id = id;
        node.span = span_of(id_tok);
        do {
            auto term = expect_string("term name");
            if (!term) return;
            if (std::find(node.asserted_terms.begin(), node.asserted_terms.end(), *term) ==
                node.asserted_terms.end())
                node.asserted_terms.push_back(*term);
        } while (peek().kind == TokKind::comma && (advance(), true));
        if (model_.find_node(id)) {
            error_at(id_tok, "DUPLICATE_NODE", "node id '" + id + "' declared twice");
            return;
        }
        model_.nodes.push_back(std::move(node));
    }

    void parse_link() {
        const Token& kw = advance();
        InstanceLink link;
        link.span = span_of(kw);
        auto rel = expect_string("relationship name");
        if (!rel) return;
        link.relationship = *rel;
        auto src = expect_ident("source node id");
        if (!src || !expect_punct(TokKind::arrow, "->")) return;
        link.source = *src;
        auto tgt = expect_ident("target node id");
        if (!tgt) return;
        link.target = *tgt;
        // links are a set
        for (const auto& existing : model_.links)
            if (existing == link) return;
        model_.links.push_back(std::move(link));
    }

    void resolve_links() {
        for (const auto& link : model_.links) {
            for (const auto* end : {&link.source, &link.target})
                if (!model_.find_node(*end))
                    diags_.push_back({Severity::error, "UNDECLARED_NODE",
                                      "link \"" + link.relationship +
                                          "\" references undeclared node '" + *end + "'",
                                      link.span});
        }
    }

    InstanceModel model_;
};

// ---------------------------------------------------------------------------
// .refmap

class RefmapParser : public Parser {
public:
    using Parser::Parser;

    std::optional<RefinementMap> run() {
        if (at_end()) {
            error_at(peek(), "SYNTAX_ERROR", "expected 'refine' header");
            return std::nullopt;
        }
        if (!expect_keyword("refine")) return std::nullopt;
        auto lower = expect_ident("lower ontology name");
        if (!lower || !expect_keyword("onto")) return std::nullopt;
        auto upper = expect_ident("upper ontology name");
        if (!upper) return std::nullopt;
        map_.lower_ontology = *lower;
        map_.upper_ontology = *upper;

        while (!at_end()) {
            const Token& row_tok = peek();
            auto lower_rel = expect_string("lower relationship name");
            if (!lower_rel) {
                advance();
                continue;
            }
            if (!expect_punct(TokKind::arrow, "->")) continue;
            auto upper_rel = expect_string("upper relationship name");
            if (!upper_rel) continue;
            bool duplicate = false;
            for (const auto& row : map_.rows) {
                if (row.lower == *lower_rel) {
                    error_at(row_tok, "DUPLICATE_MAPPING",
                             "lower relationship \"" + *lower_rel + "\" mapped twice");
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate)
                map_.rows.push_back({*lower_rel, *upper_rel, span_of(row_tok)});
        }
        if (has_errors()) return std::nullopt;
        return std::move(map_);
    }

private:
    RefinementMap map_;
};

}  // namespace

bool operator==(const RefinementRow& a, const RefinementRow& b) {
    return a.lower == b.lower && a.upper == b.upper;
}

bool operator==(const RefinementMap& a, const RefinementMap& b) {
    return a.lower_ontology == b.lower_ontology && a.upper_ontology == b.upper_ontology &&
           a.rows == b.rows;
}

ParseResult<Ontology> parse_ontology(std::string_view text, std::string file) {
    OntologyParser parser(text, std::move(file));
    ParseResult<Ontology> result;
    result.value = parser.run();
    result.diagnostics = parser.take_diagnostics();
    return result;
}

ParseResult<InstanceModel> parse_instance_model(std::string_view text, std::string file) {
    InstanceParser parser(text, std::move(file));
    ParseResult<InstanceModel> result;
    result.value = parser.run();
    result.diagnostics = parser.take_diagnostics();
    return result;
}

ParseResult<RefinementMap> parse_refinement_map(std::string_view text, std::string file) {
    RefmapParser parser(text, std::move(file));
    ParseResult<RefinementMap> result;
    result.value = parser.run();
    result.diagnostics = parser.take_diagnostics();
    return result;
}

std::optional<Multiplicity> parse_multiplicity(std::string_view token, std::string* error) {
    auto fail = [&](std::string msg) -> std::optional<Multiplicity> {
        if (error) *error = std::move(msg);
        return std::nullopt;
    };
    if (token.empty()) return fail("empty multiplicity token");
    if (token == "*") return Multiplicity::any();

    auto parse_int = [](std::string_view s, int& out) {
        if (s.empty() || s.size() > 9) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    };

    auto dots = token.find("..");
    if (dots == std::string_view::npos) {
        int n = 0;
        if (!parse_int(token, n))
            return fail("malformed multiplicity '" + std::string(token) + "'");
        return Multiplicity::exactly(n);
    }
    int min = 0;
    if (!parse_int(token.substr(0, dots), min))
        return fail("malformed multiplicity '" + std::string(token) + "'");
    std::string_view upper = token.substr(dots + 2);
    if (upper == "*") return Multiplicity::at_least(min);
    int max = 0;
    if (!parse_int(upper, max))
        return fail("malformed multiplicity '" + std::string(token) + "'");
    if (min > max)
        return fail("multiplicity minimum " + std::to_string(min) + " exceeds maximum " +
                    std::to_string(max));
    return Multiplicity{min, max};
}

}  // namespace onto
