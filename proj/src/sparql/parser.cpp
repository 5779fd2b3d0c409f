#include "protokg/sparql/parser.hpp"

#include "protokg/errors.hpp"
#include "protokg/kg/ref.hpp"
#include "protokg/util.hpp"

#include <cctype>
#include <optional>

namespace protokg::sparql {

namespace {

constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct Token {
    enum class Type { Iri, PName, Var, BlankLabel, String, Number, Ident, Punct, End };
    Type type = Type::End;
    std::string text; // decoded value (string body, variable name, IRI body)
    std::string raw;  // original byte slice
    std::size_t line = 1;
    std::size_t col = 1;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool pname_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.' || c == '%' || c == '\'' || c == '(' || c == ')' || c == ',';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_trivia();
            if (pos_ >= text_.size()) break;
            tokens.push_back(next());
        }
        Token end;
        end.line = line_;
        end.col = col_;
        tokens.push_back(end);
        return tokens;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, line_, col_);
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token make(Token::Type type, std::size_t start, std::string text) {
        Token t;
        t.type = type;
        t.text = std::move(text);
        t.raw = std::string(text_.substr(start, pos_ - start));
        t.line = start_line_;
        t.col = start_col_;
        return t;
    }

    Token next() {
        start_line_ = line_;
        start_col_ = col_;
        const std::size_t start = pos_;
        char c = peek();

        if (c == '<') {
            // IRIREF: no whitespace or angle brackets until '>'
            std::size_t i = pos_ + 1;
            while (i < text_.size()) {
                char d = text_[i];
                if (d == '>') break;
                if (std::isspace(static_cast<unsigned char>(d)) || d == '<' ||
                    d == '{' || d == '}' || d == '"')
                    break;
                ++i;
            }
            if (i < text_.size() && text_[i] == '>') {
                std::string body(text_.substr(pos_ + 1, i - pos_ - 1));
                while (pos_ <= i) advance();
                return make(Token::Type::Iri, start, std::move(body));
            }
            advance();
            if (peek() == '=') {
                advance();
                return make(Token::Type::Punct, start, "<=");
            }
            return make(Token::Type::Punct, start, "<");
        }

        if ((c == '?' || c == '$') && (std::isalnum(static_cast<unsigned char>(peek(1))) || peek(1) == '_')) {
            advance();
            std::string name;
            while (ident_char(peek())) {
                name.push_back(peek());
                advance();
            }
            return make(Token::Type::Var, start, std::move(name));
        }

        if (c == '_' && peek(1) == ':') {
            advance();
            advance();
            std::string name;
            while (ident_char(peek()) || peek() == '.') {
                name.push_back(peek());
                advance();
            }
            while (!name.empty() && name.back() == '.') {
                name.pop_back();
                --pos_;
                --col_;
            }
            return make(Token::Type::BlankLabel, start, std::move(name));
        }

        if (c == '"' || c == '\'') {
            return lex_string(start);
        }

        if (std::isdigit(static_cast<unsigned char>(c)) ||
            ((c == '+' || c == '-') && (std::isdigit(static_cast<unsigned char>(peek(1))) || (peek(1) == '.' && std::isdigit(static_cast<unsigned char>(peek(2)))))) ||
            (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
            std::string num;
            auto take = [&] { num.push_back(peek()); advance(); };
            if (peek() == '+' || peek() == '-') take();
            while (std::isdigit(static_cast<unsigned char>(peek()))) take();
            if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
                take();
                while (std::isdigit(static_cast<unsigned char>(peek()))) take();
            } else if (peek() == '.' && !std::isdigit(static_cast<unsigned char>(peek(1))) && !num.empty() && std::isdigit(static_cast<unsigned char>(num.back()))) {
                // "12." decimal form is legal SPARQL but clashes with the
                // triple terminator; leave the dot to the parser.
            }
            if ((peek() == 'e' || peek() == 'E') &&
                (std::isdigit(static_cast<unsigned char>(peek(1))) ||
                 ((peek(1) == '+' || peek(1) == '-') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
                take();
                if (peek() == '+' || peek() == '-') take();
                while (std::isdigit(static_cast<unsigned char>(peek()))) take();
            }
            return make(Token::Type::Number, start, std::move(num));
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (ident_char(peek())) {
                word.push_back(peek());
                advance();
            }
            if (peek() == ':') {
                advance();
                std::string local;
                while (pname_local_char(peek())) {
                    local.push_back(peek());
                    advance();
                }
                while (!local.empty() && local.back() == '.') {
                    local.pop_back();
                    --pos_;
                    --col_;
                }
                return make(Token::Type::PName, start, word + ":" + local);
            }
            return make(Token::Type::Ident, start, std::move(word));
        }

        if (c == ':') {
            // default-prefix PName, ":local"
            advance();
            std::string local;
            while (pname_local_char(peek())) {
                local.push_back(peek());
                advance();
            }
            while (!local.empty() && local.back() == '.') {
                local.pop_back();
                --pos_;
                --col_;
            }
            return make(Token::Type::PName, start, ":" + local);
        }

        // multi-char operators first
        static const char* two_char[] = {"^^", "&&", "||", "!=", ">=", "<="};
        for (const char* op : two_char) {
            if (c == op[0] && peek(1) == op[1]) {
                advance();
                advance();
                return make(Token::Type::Punct, start, op);
            }
        }
        advance();
        return make(Token::Type::Punct, start, std::string(1, c));
    }

    Token lex_string(std::size_t start) {
        const char quote = peek();
        bool long_form = peek(1) == quote && peek(2) == quote;
        std::string value;
        if (long_form) {
            advance();
            advance();
            advance();
            while (pos_ < text_.size()) {
                if (peek() == quote && peek(1) == quote && peek(2) == quote) {
                    advance();
                    advance();
                    advance();
                    return make(Token::Type::String, start, std::move(value));
                }
                value.push_back(decode_char());
            }
            fail("unterminated long string");
        }
        advance();
        while (pos_ < text_.size()) {
            if (peek() == quote) {
                advance();
                return make(Token::Type::String, start, std::move(value));
            }
            if (peek() == '\n') fail("newline in string literal");
            value.push_back(decode_char());
        }
        fail("unterminated string");
    }

    char decode_char() {
        char c = peek();
        if (c != '\\') {
            advance();
            return c;
        }
        advance();
        char e = peek();
        advance();
        switch (e) {
            case 'n': return '\n';
            case 't': return '\t';
            case 'r': return '\r';
            case 'b': return '\b';
            case 'f': return '\f';
            case '"': return '"';
            case '\'': return '\'';
            case '\\': return '\\';
            case 'u':
            case 'U': {
                int width = e == 'u' ? 4 : 8;
                unsigned long cp = 0;
                for (int i = 0; i < width; ++i) {
                    char h = peek();
                    if (!std::isxdigit(static_cast<unsigned char>(h))) fail("bad \\u escape");
                    cp = cp * 16 + static_cast<unsigned long>(
                                       std::isdigit(static_cast<unsigned char>(h))
                                           ? h - '0'
                                           : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
                    advance();
                }
                // keep it simple: only BMP-or-lower code points below 0x80
                // round-trip exactly; others degrade to '?'
                return cp < 0x80 ? static_cast<char>(cp) : '?';
            }
            default: return e;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::size_t start_line_ = 1;
    std::size_t start_col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ParsedQuery parse() {
        ParsedQuery q;
        parse_prologue(q);
        const Token& t = peek();
        if (t.type == Token::Type::Ident && is_kw(t, "SELECT")) {
            parse_select(q);
        } else if (t.type == Token::Type::Ident && is_kw(t, "ASK")) {
            advance();
            q.form = QueryForm::Ask;
        } else {
            fail("expected SELECT or ASK");
        }
        if (peek_kw("WHERE")) advance();
        q.where = parse_group(q);
        parse_solution_modifiers(q);
        if (peek().type != Token::Type::End) fail("unexpected trailing input");
        return q;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }

    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw ParseError(what + " (near '" + (t.type == Token::Type::End ? "<end>" : t.raw) + "')",
                         t.line, t.col);
    }

    static bool is_kw(const Token& t, std::string_view kw) {
        return t.type == Token::Type::Ident && t.text.size() == kw.size() &&
               util::starts_with_ci(t.text, kw);
    }

    bool peek_kw(std::string_view kw, std::size_t ahead = 0) const {
        return is_kw(peek(ahead), kw);
    }

    bool peek_punct(std::string_view p, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.type == Token::Type::Punct && t.text == p;
    }

    void expect_punct(std::string_view p) {
        if (!peek_punct(p)) fail("expected '" + std::string(p) + "'");
        advance();
    }

    void parse_prologue(ParsedQuery& q) {
        while (true) {
            if (peek_kw("PREFIX")) {
                advance();
                const Token& name = peek();
                if (name.type != Token::Type::PName) fail("expected prefix name");
                std::string prefix = name.text.substr(0, name.text.find(':'));
                advance();
                const Token& iri = peek();
                if (iri.type != Token::Type::Iri) fail("expected IRI after PREFIX");
                q.prefixes[prefix] = iri.text;
                advance();
            } else if (peek_kw("BASE")) {
                advance();
                if (peek().type != Token::Type::Iri) fail("expected IRI after BASE");
                base_ = peek().text;
                advance();
            } else {
                break;
            }
        }
        prefixes_ = &q.prefixes;
    }

    kg::KgRef make_ref(const std::string& iri, kg::RefKind hint) const {
        std::string abs = iri;
        if (abs.find("://") == std::string::npos && !base_.empty()) abs = base_ + abs;
        return kg::classify_iri(abs, hint);
    }

    std::string expand_pname(const Token& t) const {
        const auto colon = t.text.find(':');
        const std::string prefix = t.text.substr(0, colon);
        const std::string local = t.text.substr(colon + 1);
        if (prefixes_) {
            auto it = prefixes_->find(prefix);
            if (it != prefixes_->end()) return it->second + local;
        }
        auto it = kg::known_prefixes().find(prefix);
        if (it != kg::known_prefixes().end()) return it->second + local;
        throw ParseError("undeclared prefix '" + prefix + ":'", t.line, t.col);
    }

    void parse_select(ParsedQuery& q) {
        advance(); // SELECT
        q.form = QueryForm::Select;
        if (peek_kw("DISTINCT")) {
            q.distinct = true;
            advance();
        } else if (peek_kw("REDUCED")) {
            advance();
        }
        bool any = false;
        while (true) {
            const Token& t = peek();
            if (t.type == Token::Type::Var) {
                q.projection.vars.push_back(Variable{t.text});
                advance();
                any = true;
            } else if (t.type == Token::Type::Punct && t.text == "*") {
                q.projection.star = true;
                advance();
                any = true;
            } else if (t.type == Token::Type::Punct && t.text == "(") {
                q.projection.aggregates.push_back(parse_projection_expr());
                any = true;
            } else {
                break;
            }
        }
        if (!any) fail("empty SELECT projection");
    }

    AggregateProjection parse_projection_expr() {
        AggregateProjection agg;
        std::string raw;
        expect_punct("(");
        int depth = 1;
        std::optional<std::size_t> count_at;
        if (peek_kw("COUNT")) count_at = pos_;
        std::optional<Variable> as_var;
        bool saw_as = false;
        while (depth > 0) {
            const Token& t = peek();
            if (t.type == Token::Type::End) fail("unterminated projection expression");
            if (t.type == Token::Type::Punct && t.text == "(") ++depth;
            if (t.type == Token::Type::Punct && t.text == ")") {
                --depth;
                if (depth == 0) {
                    advance();
                    break;
                }
            }
            if (is_kw(t, "AS") && depth == 1) saw_as = true;
            if (saw_as && t.type == Token::Type::Var) as_var = Variable{t.text};
            raw += t.raw;
            raw += ' ';
            advance();
        }
        if (!as_var) fail("projection expression without AS variable");
        agg.as = *as_var;
        agg.raw = util::trim(raw);
        if (count_at) {
            // COUNT ( DISTINCT? ( '*' | ?var ) )
            std::size_t i = *count_at + 1;
            if (i < tokens_.size() && tokens_[i].type == Token::Type::Punct && tokens_[i].text == "(") {
                ++i;
                if (i < tokens_.size() && is_kw(tokens_[i], "DISTINCT")) {
                    agg.distinct = true;
                    ++i;
                }
                if (i < tokens_.size() && tokens_[i].type == Token::Type::Punct && tokens_[i].text == "*") {
                    agg.count_star = true;
                } else if (i < tokens_.size() && tokens_[i].type == Token::Type::Var) {
                    agg.count_var = Variable{tokens_[i].text};
                }
            }
        }
        return agg;
    }

    PatternNode parse_group(ParsedQuery& q) {
        PatternNode group;
        group.kind = PatternNode::Kind::Group;
        expect_punct("{");
        if (peek_kw("SELECT")) {
            PatternNode node;
            node.kind = PatternNode::Kind::SubSelect;
            auto sub = std::make_shared<ParsedQuery>();
            sub->prefixes = q.prefixes;
            parse_subselect(*sub);
            prefixes_ = &q.prefixes;
            node.sub = sub;
            group.children.push_back(std::move(node));
            expect_punct("}");
            return group;
        }
        while (!peek_punct("}")) {
            if (peek().type == Token::Type::End) fail("unterminated group pattern");
            if (peek_punct(".")) {
                advance();
                continue;
            }
            if (peek_punct("{")) {
                group.children.push_back(parse_group_or_union(q));
            } else if (peek_kw("OPTIONAL")) {
                advance();
                PatternNode node;
                node.kind = PatternNode::Kind::Optional;
                node.children.push_back(parse_group(q));
                group.children.push_back(std::move(node));
            } else if (peek_kw("MINUS")) {
                advance();
                PatternNode node;
                node.kind = PatternNode::Kind::Minus;
                node.children.push_back(parse_group(q));
                group.children.push_back(std::move(node));
            } else if (peek_kw("FILTER")) {
                group.children.push_back(parse_filter(q));
            } else if (peek_kw("BIND")) {
                group.children.push_back(parse_bind());
            } else if (peek_kw("VALUES")) {
                group.children.push_back(parse_values());
            } else if (peek_kw("GRAPH") || peek_kw("SERVICE")) {
                const bool service = peek_kw("SERVICE");
                advance();
                if (peek_kw("SILENT")) advance();
                PatternNode node;
                node.kind = service ? PatternNode::Kind::Service : PatternNode::Kind::Graph;
                node.text = peek().raw;
                advance(); // graph/service term (var or IRI)
                node.children.push_back(parse_group(q));
                group.children.push_back(std::move(node));
            } else {
                parse_triples_block(group);
            }
        }
        expect_punct("}");
        return group;
    }

    void parse_subselect(ParsedQuery& sub) {
        parse_select(sub);
        if (peek_kw("WHERE")) advance();
        prefixes_ = &sub.prefixes;
        sub.where = parse_group(sub);
        parse_solution_modifiers(sub);
    }

    PatternNode parse_group_or_union(ParsedQuery& q) {
        std::vector<PatternNode> branches;
        branches.push_back(parse_group(q));
        while (peek_kw("UNION")) {
            advance();
            branches.push_back(parse_group(q));
        }
        if (branches.size() == 1) return std::move(branches.front());
        PatternNode node;
        node.kind = PatternNode::Kind::Union;
        node.children = std::move(branches);
        return node;
    }

    PatternNode parse_filter(ParsedQuery& q) {
        advance(); // FILTER
        PatternNode node;
        node.kind = PatternNode::Kind::Filter;
        if (peek_kw("EXISTS") || (peek_kw("NOT") && peek_kw("EXISTS", 1))) {
            node.negated = peek_kw("NOT");
            if (node.negated) advance();
            advance(); // EXISTS
            node.children.push_back(parse_group(q));
            node.text = node.negated ? "NOT EXISTS" : "EXISTS";
            return node;
        }
        // Constraint: bracketted expression or (builtin/function) call.
        std::string raw;
        if (peek().type == Token::Type::Ident || peek().type == Token::Type::Iri ||
            peek().type == Token::Type::PName) {
            raw += peek().raw;
            advance();
        }
        if (!peek_punct("(")) fail("expected '(' in FILTER constraint");
        int depth = 0;
        do {
            const Token& t = peek();
            if (t.type == Token::Type::End) fail("unterminated FILTER constraint");
            if (t.type == Token::Type::Punct && t.text == "(") ++depth;
            if (t.type == Token::Type::Punct && t.text == ")") --depth;
            raw += t.raw;
            raw += ' ';
            advance();
        } while (depth > 0);
        node.text = util::trim(raw);
        return node;
    }

    PatternNode parse_bind() {
        advance(); // BIND
        PatternNode node;
        node.kind = PatternNode::Kind::Bind;
        expect_punct("(");
        int depth = 1;
        std::string raw;
        bool saw_as = false;
        while (depth > 0) {
            const Token& t = peek();
            if (t.type == Token::Type::End) fail("unterminated BIND");
            if (t.type == Token::Type::Punct && t.text == "(") ++depth;
            if (t.type == Token::Type::Punct && t.text == ")") {
                --depth;
                if (depth == 0) {
                    advance();
                    break;
                }
            }
            if (is_kw(t, "AS")) saw_as = true;
            if (saw_as && t.type == Token::Type::Var) node.vars = {Variable{t.text}};
            raw += t.raw;
            raw += ' ';
            advance();
        }
        if (node.vars.empty()) fail("BIND without AS variable");
        node.text = util::trim(raw);
        return node;
    }

    PatternNode parse_values() {
        advance(); // VALUES
        PatternNode node;
        node.kind = PatternNode::Kind::Values;
        bool parens = false;
        if (peek().type == Token::Type::Var) {
            node.vars.push_back(Variable{peek().text});
            advance();
        } else if (peek_punct("(")) {
            parens = true;
            advance();
            while (peek().type == Token::Type::Var) {
                node.vars.push_back(Variable{peek().text});
                advance();
            }
            expect_punct(")");
        } else {
            fail("expected variable(s) after VALUES");
        }
        expect_punct("{");
        while (!peek_punct("}")) {
            if (peek().type == Token::Type::End) fail("unterminated VALUES block");
            std::vector<std::optional<PatternTerm>> row;
            if (parens) {
                expect_punct("(");
                while (!peek_punct(")")) row.push_back(parse_data_value());
                expect_punct(")");
            } else {
                row.push_back(parse_data_value());
            }
            if (row.size() != node.vars.size()) fail("VALUES row arity mismatch");
            node.value_rows.push_back(std::move(row));
        }
        expect_punct("}");
        return node;
    }

    std::optional<PatternTerm> parse_data_value() {
        const Token& t = peek();
        if (is_kw(t, "UNDEF")) {
            advance();
            return std::nullopt;
        }
        auto term = try_parse_term(kg::RefKind::Unknown);
        if (!term) fail("bad VALUES entry");
        return term;
    }

    void parse_triples_block(PatternNode& group) {
        while (true) {
            PatternTerm subject = parse_term_or_blank(group, kg::RefKind::Entity);
            parse_property_list(group, subject);
            if (peek_punct(".")) {
                advance();
                // a further subject?
                if (starts_term()) continue;
            }
            break;
        }
    }

    bool starts_term() const {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::Iri:
            case Token::Type::PName:
            case Token::Type::Var:
            case Token::Type::BlankLabel:
            case Token::Type::String:
            case Token::Type::Number:
                return true;
            case Token::Type::Punct:
                return t.text == "[";
            case Token::Type::Ident:
                return is_kw(t, "true") || is_kw(t, "false");
            default:
                return false;
        }
    }

    PatternTerm parse_term_or_blank(PatternNode& group, kg::RefKind hint) {
        if (peek_punct("[")) {
            advance();
            Variable anon{"__anon" + std::to_string(anon_counter_++)};
            if (!peek_punct("]")) parse_property_list(group, PatternTerm{anon});
            expect_punct("]");
            return anon;
        }
        auto term = try_parse_term(hint);
        if (!term) fail("expected term");
        return *term;
    }

    std::optional<PatternTerm> try_parse_term(kg::RefKind hint) {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::Var:
                advance();
                return PatternTerm{Variable{t.text}};
            case Token::Type::BlankLabel:
                advance();
                return PatternTerm{Variable{"__b_" + t.text}};
            case Token::Type::Iri:
                advance();
                return PatternTerm{make_ref(t.text, hint)};
            case Token::Type::PName: {
                std::string iri = expand_pname(t);
                advance();
                return PatternTerm{make_ref(iri, hint)};
            }
            case Token::Type::String: {
                kg::Literal lit;
                lit.lexical = t.text;
                advance();
                if (peek_punct("@") && peek(1).type == Token::Type::Ident) {
                    advance();
                    lit.language = peek().text;
                    advance();
                } else if (peek_punct("^^")) {
                    advance();
                    const Token& dt = peek();
                    if (dt.type == Token::Type::Iri) {
                        lit.datatype = dt.text;
                    } else if (dt.type == Token::Type::PName) {
                        lit.datatype = expand_pname(dt);
                    } else {
                        fail("expected datatype IRI");
                    }
                    advance();
                }
                return PatternTerm{lit};
            }
            case Token::Type::Number: {
                kg::Literal lit;
                lit.lexical = t.text;
                if (t.text.find_first_of("eE") != std::string::npos) {
                    lit.datatype = std::string(kXsd) + "double";
                } else if (t.text.find('.') != std::string::npos) {
                    lit.datatype = std::string(kXsd) + "decimal";
                } else {
                    lit.datatype = std::string(kXsd) + "integer";
                }
                advance();
                return PatternTerm{lit};
            }
            case Token::Type::Ident:
                if (is_kw(t, "true") || is_kw(t, "false")) {
                    kg::Literal lit;
                    lit.lexical = util::lower_ascii(t.text);
                    lit.datatype = std::string(kXsd) + "boolean";
                    advance();
                    return PatternTerm{lit};
                }
                return std::nullopt;
            default:
                return std::nullopt;
        }
    }

    void parse_property_list(PatternNode& group, const PatternTerm& subject) {
        while (true) {
            PatternTerm predicate = parse_verb();
            while (true) {
                PatternTerm object = parse_term_or_blank(group, kg::RefKind::Entity);
                group.triples.push_back(TriplePattern{subject, predicate, object});
                if (peek_punct(",")) {
                    advance();
                    continue;
                }
                break;
            }
            if (peek_punct(";")) {
                while (peek_punct(";")) advance();
                if (!starts_verb()) break; // dangling ';'
                continue;
            }
            break;
        }
    }

    bool starts_verb() const {
        const Token& t = peek();
        return t.type == Token::Type::Var || t.type == Token::Type::Iri ||
               t.type == Token::Type::PName || is_kw(t, "a") ||
               (t.type == Token::Type::Punct &&
                (t.text == "^" || t.text == "(" || t.text == "!"));
    }

    // Verb: variable, or a property path. A path that is a single plain IRI
    // (or 'a') becomes a bound predicate; anything longer keeps its text.
    PatternTerm parse_verb() {
        const Token& t = peek();
        if (t.type == Token::Type::Var) {
            advance();
            return Variable{t.text};
        }
        if (!starts_verb()) fail("expected predicate");
        struct PathState {
            int primaries = 0;
            bool complex = false;
            std::string raw;
            std::optional<kg::KgRef> single;
        } st;
        parse_path_alternative(st);
        if (st.primaries == 1 && !st.complex && st.single) return *st.single;
        PropertyPath path;
        path.text = util::trim(st.raw);
        return path;
    }

    template <typename State>
    void parse_path_alternative(State& st) {
        parse_path_sequence(st);
        while (peek_punct("|")) {
            st.complex = true;
            st.raw += peek().raw;
            advance();
            parse_path_sequence(st);
        }
    }

    template <typename State>
    void parse_path_sequence(State& st) {
        parse_path_elt(st);
        while (peek_punct("/")) {
            st.complex = true;
            st.raw += peek().raw;
            advance();
            parse_path_elt(st);
        }
    }

    template <typename State>
    void parse_path_elt(State& st) {
        if (peek_punct("^")) {
            st.complex = true;
            st.raw += peek().raw;
            advance();
        }
        if (peek_punct("!")) {
            st.complex = true;
            st.raw += peek().raw;
            advance();
        }
        const Token& t = peek();
        if (t.type == Token::Type::Iri) {
            st.raw += t.raw;
            st.single = make_ref(t.text, kg::RefKind::Property);
            ++st.primaries;
            advance();
        } else if (t.type == Token::Type::PName) {
            st.raw += t.raw;
            st.single = make_ref(expand_pname(t), kg::RefKind::Property);
            ++st.primaries;
            advance();
        } else if (is_kw(t, "a")) {
            st.raw += t.raw;
            st.single = make_ref(kRdfType, kg::RefKind::Property);
            ++st.primaries;
            advance();
        } else if (t.type == Token::Type::Punct && t.text == "(") {
            st.complex = true;
            st.raw += t.raw;
            advance();
            parse_path_alternative(st);
            if (!peek_punct(")")) fail("expected ')' in property path");
            st.raw += peek().raw;
            advance();
        } else {
            fail("expected property path element");
        }
        // modifiers
        while (peek_punct("*") || peek_punct("+") || peek_punct("?")) {
            st.complex = true;
            st.raw += peek().raw;
            advance();
        }
    }

    void parse_solution_modifiers(ParsedQuery& q) {
        while (true) {
            if (peek_kw("GROUP") || peek_kw("ORDER")) {
                (peek_kw("GROUP") ? q.has_group_by : q.has_order_by) = true;
                advance();
                if (peek_kw("BY")) advance();
                skip_modifier_body();
            } else if (peek_kw("HAVING")) {
                q.has_group_by = true;
                advance();
                skip_modifier_body();
            } else if (peek_kw("LIMIT")) {
                advance();
                if (peek().type != Token::Type::Number) fail("expected number after LIMIT");
                q.limit = std::stol(peek().text);
                advance();
            } else if (peek_kw("OFFSET")) {
                advance();
                if (peek().type != Token::Type::Number) fail("expected number after OFFSET");
                q.offset = std::stol(peek().text);
                advance();
            } else if (peek_kw("VALUES")) {
                parse_values(); // trailing VALUES block, recorded nowhere
            } else {
                break;
            }
        }
    }

    void skip_modifier_body() {
        int depth = 0;
        while (true) {
            const Token& t = peek();
            if (t.type == Token::Type::End) return;
            if (depth == 0 &&
                (is_kw(t, "GROUP") || is_kw(t, "ORDER") || is_kw(t, "HAVING") ||
                 is_kw(t, "LIMIT") || is_kw(t, "OFFSET") || is_kw(t, "VALUES")))
                return;
            if (t.type == Token::Type::Punct && t.text == "(") ++depth;
            if (t.type == Token::Type::Punct && t.text == ")") --depth;
            advance();
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::map<std::string, std::string>* prefixes_ = nullptr;
    std::string base_;
    int anon_counter_ = 0;
};

} // namespace

ParsedQuery parse_query(std::string_view query_text) {
    Lexer lexer(query_text);
    Parser parser(lexer.run());
    return parser.parse();
}

std::string reformat_query(std::string_view query_text,
                           const std::function<std::string(std::size_t)>& spacer) {
    Lexer lexer(query_text);
    auto tokens = lexer.run();
    std::string out;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) { // skip End token
        out += spacer(i);
        out += tokens[i].raw;
    }
    return out;
}

} // namespace protokg::sparql
