// Copyright 2026 The tgm-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tgmeval/sparql/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "tgmeval/sparql/lexer.hpp"

namespace tgmeval::sparql {

namespace {

constexpr const char* kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
constexpr const char* kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
constexpr const char* kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
constexpr const char* kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";

struct ParserException : std::runtime_error {
    int line;
    int column;
    std::string snippet;
    ParserException(const Token& at, std::string_view source,
                    const std::string& msg)
        : std::runtime_error(msg), line(at.line), column(at.column) {
        if (at.kind == TokenKind::Eof) {
            snippet = "<eof>";
        } else {
            std::size_t len = std::min<std::size_t>(at.end - at.begin, 40);
            snippet = std::string(source.substr(at.begin, len));
        }
    }
};

std::string upper(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out += static_cast<char>(std::toupper(
                         static_cast<unsigned char>(c)));
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string_view source,
           const PrefixEnv& env)
        : tokens_(std::move(tokens)), source_(source), env_(env) {
        // Anonymous blank nodes get generated labels; make sure they cannot
        // collide with labels already present in the input.
        for (const auto& t : tokens_) {
            if (t.kind == TokenKind::BlankLabel) used_blank_.insert(t.value);
        }
    }

    QueryAst parse() {
        parse_prologue();
        const Token& t = peek();
        QueryAst ast;
        if (is_keyword(t, "SELECT")) {
            ast = parse_select();
        } else if (is_keyword(t, "ASK")) {
            ast = parse_ask();
        } else if (is_keyword(t, "CONSTRUCT") || is_keyword(t, "DESCRIBE")) {
            fail(t, upper(t.value) + " queries are not supported");
        } else {
            fail(t, "expected SELECT or ASK");
        }
        expect(TokenKind::Eof, "end of query");
        return ast;
    }

  private:
    static constexpr int kMaxDepth = 128;

    std::vector<Token> tokens_;
    std::string_view source_;
    std::size_t pos_ = 0;
    PrefixEnv inline_env_;
    const PrefixEnv& env_;
    std::string base_;
    std::set<std::string> used_blank_;
    int anon_counter_ = 0;
    int depth_ = 0;

    struct DepthGuard {
        Parser& parser;
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxDepth)
                parser.fail(parser.peek(), "query nesting too deep");
        }
        ~DepthGuard() { --parser.depth_; }
    };

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= tokens_.size()) i = tokens_.size() - 1;  // Eof
        return tokens_[i];
    }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at(TokenKind k) const { return peek().kind == k; }
    bool at_keyword(std::string_view kw) const { return is_keyword(peek(), kw); }
    bool accept(TokenKind k) {
        if (at(k)) {
            advance();
            return true;
        }
        return false;
    }
    bool accept_keyword(std::string_view kw) {
        if (at_keyword(kw)) {
            advance();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParserException(t, source_, msg);
    }
    const Token& expect(TokenKind k, const std::string& what) {
        if (!at(k)) fail(peek(), "expected " + what);
        return advance();
    }
    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw))
            fail(peek(), "expected " + std::string(kw));
    }

    // --- prologue ---

    void parse_prologue() {
        for (;;) {
            if (at_keyword("PREFIX")) {
                advance();
                const Token& name = peek();
                std::string label;
                if (name.kind == TokenKind::PrefixedName &&
                    name.value.empty()) {
                    label = name.prefix;
                    advance();
                } else {
                    fail(name, "expected 'prefix:' after PREFIX");
                }
                const Token& iri = expect(TokenKind::IriRef, "namespace IRI");
                inline_env_.declare(label, resolve_base(iri.value));
            } else if (at_keyword("BASE")) {
                advance();
                const Token& iri = expect(TokenKind::IriRef, "base IRI");
                base_ = iri.value;
            } else {
                break;
            }
        }
    }

    // Relative references are resolved by plain concatenation; the corpora
    // only use absolute IRIs or simple fragments.
    std::string resolve_base(const std::string& iri) const {
        bool absolute = false;
        for (char c : iri) {
            if (c == ':') {
                absolute = true;
                break;
            }
            if (c == '/' || c == '?' || c == '#') break;
        }
        if (absolute || base_.empty()) return iri;
        return base_ + iri;
    }

    std::string expand_prefixed(const Token& t) const {
        if (auto ns = inline_env_.lookup(t.prefix)) return *ns + t.value;
        if (auto ns = env_.resolve(t.prefix)) return *ns + t.value;
        fail(t, "undeclared prefix '" + t.prefix + "'");
    }

    // --- query forms ---

    QueryAst parse_select() {
        advance();  // SELECT
        QueryAst ast;
        ast.form = QueryForm::Select;
        Projection proj;
        if (accept_keyword("DISTINCT")) {
            proj.dedup = SelectDedup::Distinct;
        } else if (accept_keyword("REDUCED")) {
            proj.dedup = SelectDedup::Reduced;
        }
        if (accept(TokenKind::Star)) {
            proj.star = true;
        } else {
            while (at(TokenKind::Variable) || at(TokenKind::LParen)) {
                if (at(TokenKind::Variable)) {
                    proj.items.emplace_back(Var{advance().value});
                } else {
                    advance();  // (
                    BoundItem item;
                    item.expr = parse_expression();
                    expect_keyword("AS");
                    item.alias = Var{expect(TokenKind::Variable,
                                            "alias variable").value};
                    expect(TokenKind::RParen, "')'");
                    proj.items.emplace_back(std::move(item));
                }
            }
            if (proj.items.empty())
                fail(peek(), "expected projection variable, '(' or '*'");
            check_aliases(proj);
        }
        ast.projection = std::move(proj);
        ast.where = parse_where_clause();
        ast.modifiers = parse_solution_modifiers();
        return ast;
    }

    void check_aliases(const Projection& proj) const {
        std::set<Var> plain, aliases;
        for (const auto& item : proj.items) {
            if (const Var* v = std::get_if<Var>(&item)) plain.insert(*v);
        }
        for (const auto& item : proj.items) {
            if (const BoundItem* b = std::get_if<BoundItem>(&item)) {
                if (!aliases.insert(b->alias).second ||
                    plain.count(b->alias)) {
                    fail(peek(), "duplicate projection alias ?" +
                                     b->alias.name);
                }
            }
        }
    }

    QueryAst parse_ask() {
        advance();  // ASK
        QueryAst ast;
        ast.form = QueryForm::Ask;
        ast.where = parse_where_clause();
        ast.modifiers = parse_solution_modifiers();
        return ast;
    }

    std::vector<PatternElement> parse_where_clause() {
        accept_keyword("WHERE");  // optional keyword
        return parse_group();
    }

    // --- graph patterns ---

    std::vector<PatternElement> parse_group() {
        DepthGuard guard(*this);
        expect(TokenKind::LBrace, "'{'");
        if (at_keyword("SELECT"))
            fail(peek(), "subqueries are not supported");
        std::vector<PatternElement> elements;
        Bgp bgp;
        auto flush_bgp = [&] {
            if (!bgp.triples.empty()) {
                elements.push_back(PatternElement{std::move(bgp)});
                bgp = Bgp{};
            }
        };
        for (;;) {
            if (at(TokenKind::RBrace)) {
                advance();
                break;
            }
            if (at(TokenKind::Eof)) fail(peek(), "unterminated group, expected '}'");
            if (at_keyword("OPTIONAL")) {
                flush_bgp();
                advance();
                OptionalPattern opt;
                opt.elements = parse_group();
                elements.push_back(PatternElement{std::move(opt)});
            } else if (at(TokenKind::LBrace)) {
                flush_bgp();
                std::vector<PatternElement> group = parse_group();
                if (at_keyword("UNION")) {
                    PatternElement current{
                        UnionPattern{std::move(group), {}}};
                    while (accept_keyword("UNION")) {
                        auto& u = std::get<UnionPattern>(current.node);
                        if (!u.right.empty()) {
                            // chain left-associatively
                            std::vector<PatternElement> lhs;
                            lhs.push_back(std::move(current));
                            current = PatternElement{
                                UnionPattern{std::move(lhs), {}}};
                        }
                        std::get<UnionPattern>(current.node).right =
                            parse_group();
                    }
                    elements.push_back(std::move(current));
                } else {
                    // a bare sub-group is inlined; grouping carries no
                    // meaning for the structural checks done here
                    for (auto& e : group) elements.push_back(std::move(e));
                }
            } else if (at_keyword("FILTER")) {
                flush_bgp();
                advance();
                FilterPattern f;
                f.expr = parse_constraint();
                elements.push_back(PatternElement{std::move(f)});
            } else if (at_keyword("BIND")) {
                flush_bgp();
                advance();
                expect(TokenKind::LParen, "'(' after BIND");
                BindPattern b;
                b.expr = parse_expression();
                expect_keyword("AS");
                b.alias = Var{expect(TokenKind::Variable,
                                     "alias variable").value};
                expect(TokenKind::RParen, "')'");
                elements.push_back(PatternElement{std::move(b)});
            } else if (at_keyword("VALUES")) {
                flush_bgp();
                advance();
                elements.push_back(PatternElement{parse_values()});
            } else if (at_keyword("GRAPH") || at_keyword("SERVICE") ||
                       at_keyword("MINUS")) {
                fail(peek(), upper(peek().value) +
                                 " patterns are not supported");
            } else if (accept(TokenKind::Dot)) {
                // stray separator
            } else {
                parse_triples_same_subject(bgp);
            }
        }
        flush_bgp();
        return elements;
    }

    ValuesPattern parse_values() {
        ValuesPattern values;
        bool parenthesized = false;
        if (accept(TokenKind::LParen)) {
            parenthesized = true;
            while (at(TokenKind::Variable))
                values.vars.push_back(Var{advance().value});
            expect(TokenKind::RParen, "')'");
        } else {
            values.vars.push_back(
                Var{expect(TokenKind::Variable, "VALUES variable").value});
        }
        expect(TokenKind::LBrace, "'{'");
        while (!at(TokenKind::RBrace)) {
            std::vector<std::optional<Term>> row;
            if (parenthesized) {
                expect(TokenKind::LParen, "'('");
                while (!at(TokenKind::RParen)) row.push_back(parse_data_value());
                advance();  // )
            } else {
                row.push_back(parse_data_value());
            }
            if (row.size() != values.vars.size())
                fail(peek(), "VALUES row width does not match variable list");
            values.rows.push_back(std::move(row));
        }
        advance();  // }
        return values;
    }

    std::optional<Term> parse_data_value() {
        if (at_keyword("UNDEF")) {
            advance();
            return std::nullopt;
        }
        Term t = parse_term(/*allow_var=*/false);
        return t;
    }

    void parse_triples_same_subject(Bgp& bgp) {
        Term subject = parse_term(true);
        if (std::holds_alternative<Literal>(subject))
            fail(peek(), "literal in subject position");
        for (;;) {
            Term verb = parse_verb();
            for (;;) {
                Term object = parse_term(true);
                bgp.triples.push_back(
                    TriplePattern{subject, verb, std::move(object)});
                if (!accept(TokenKind::Comma)) break;
            }
            if (accept(TokenKind::Semicolon)) {
                if (at(TokenKind::Dot) || at(TokenKind::RBrace) ||
                    at(TokenKind::Semicolon)) {
                    while (accept(TokenKind::Semicolon)) {
                    }
                    break;  // trailing ';'
                }
                continue;
            }
            break;
        }
        accept(TokenKind::Dot);
    }

    Term parse_verb() {
        const Token& t = peek();
        Term verb;
        if (t.kind == TokenKind::Identifier && t.value == "a") {
            advance();
            verb = Iri{kRdfType};
        } else if (t.kind == TokenKind::Variable) {
            advance();
            verb = Var{t.value};
        } else if (t.kind == TokenKind::IriRef) {
            advance();
            verb = Iri{resolve_base(t.value)};
        } else if (t.kind == TokenKind::PrefixedName) {
            advance();
            verb = Iri{expand_prefixed(t)};
        } else {
            fail(t, "expected predicate");
        }
        switch (peek().kind) {
            case TokenKind::Slash:
            case TokenKind::Pipe:
            case TokenKind::Caret:
            case TokenKind::Star:
                fail(peek(), "property paths are not supported");
            case TokenKind::Plus:
                // '+' starting a signed numeric object is fine; a bare '+'
                // would be a one-or-more path
                if (peek(1).kind != TokenKind::Integer &&
                    peek(1).kind != TokenKind::Decimal &&
                    peek(1).kind != TokenKind::Double)
                    fail(peek(), "property paths are not supported");
                break;
            default:
                break;
        }
        return verb;
    }

    Term parse_term(bool allow_var) {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::Variable:
                if (!allow_var) fail(t, "variable not allowed here");
                advance();
                return Var{t.value};
            case TokenKind::IriRef:
                advance();
                return Iri{resolve_base(t.value)};
            case TokenKind::PrefixedName:
                advance();
                return Iri{expand_prefixed(t)};
            case TokenKind::BlankLabel:
                advance();
                return BlankNode{t.value};
            case TokenKind::Anon:
                advance();
                return BlankNode{fresh_blank()};
            case TokenKind::String:
                return parse_string_literal();
            case TokenKind::Integer:
            case TokenKind::Decimal:
            case TokenKind::Double:
                return numeric_literal(advance(), "");
            case TokenKind::Plus:
            case TokenKind::Minus: {
                advance();
                const char* sign = t.kind == TokenKind::Minus ? "-" : "";
                const Token& num = peek();
                if (num.kind != TokenKind::Integer &&
                    num.kind != TokenKind::Decimal &&
                    num.kind != TokenKind::Double)
                    fail(num, "expected numeric literal after sign");
                return numeric_literal(advance(), sign);
            }
            case TokenKind::Identifier:
                if (is_keyword(t, "TRUE") || is_keyword(t, "FALSE")) {
                    advance();
                    return Literal{is_keyword(t, "TRUE") ? "true" : "false",
                                   kXsdBoolean, std::nullopt};
                }
                fail(t, "unexpected identifier '" + t.value + "'");
            default:
                fail(t, "expected RDF term");
        }
    }

    Term parse_string_literal() {
        const Token& s = advance();
        Literal lit{s.value, std::nullopt, std::nullopt};
        if (at(TokenKind::LangTag)) {
            lit.lang = advance().value;
        } else if (accept(TokenKind::DoubleCaret)) {
            const Token& dt = peek();
            if (dt.kind == TokenKind::IriRef) {
                advance();
                lit.datatype = resolve_base(dt.value);
            } else if (dt.kind == TokenKind::PrefixedName) {
                advance();
                lit.datatype = expand_prefixed(dt);
            } else {
                fail(dt, "expected datatype IRI after '^^'");
            }
        }
        return lit;
    }

    Term numeric_literal(const Token& t, const char* sign) {
        const char* datatype = t.kind == TokenKind::Integer   ? kXsdInteger
                               : t.kind == TokenKind::Decimal ? kXsdDecimal
                                                              : kXsdDouble;
        return Literal{sign + t.value, datatype, std::nullopt};
    }

    std::string fresh_blank() {
        std::string label;
        do {
            label = "genblank" + std::to_string(++anon_counter_);
        } while (used_blank_.count(label));
        used_blank_.insert(label);
        return label;
    }

    // --- expressions ---

    ExprPtr parse_constraint() {
        const Token& t = peek();
        if (t.kind == TokenKind::LParen) {
            advance();
            ExprPtr e = parse_expression();
            expect(TokenKind::RParen, "')'");
            return e;
        }
        if (at_keyword("EXISTS") || at_keyword("NOT"))
            fail(t, "EXISTS constraints are not supported");
        if (t.kind == TokenKind::Identifier || t.kind == TokenKind::IriRef ||
            t.kind == TokenKind::PrefixedName) {
            return parse_primary();
        }
        fail(t, "expected FILTER constraint");
    }

    ExprPtr parse_expression() {
        DepthGuard guard(*this);
        return parse_or();
    }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (accept(TokenKind::OrOr))
            lhs = make_expr(Binary{BinaryOp::Or, lhs, parse_and()});
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_relational();
        while (accept(TokenKind::AndAnd))
            lhs = make_expr(Binary{BinaryOp::And, lhs, parse_relational()});
        return lhs;
    }

    ExprPtr parse_relational() {
        ExprPtr lhs = parse_additive();
        BinaryOp op;
        switch (peek().kind) {
            case TokenKind::Eq: op = BinaryOp::Eq; break;
            case TokenKind::Ne: op = BinaryOp::Ne; break;
            case TokenKind::Lt: op = BinaryOp::Lt; break;
            case TokenKind::Le: op = BinaryOp::Le; break;
            case TokenKind::Gt: op = BinaryOp::Gt; break;
            case TokenKind::Ge: op = BinaryOp::Ge; break;
            default: return lhs;
        }
        advance();
        return make_expr(Binary{op, lhs, parse_additive()});
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        for (;;) {
            if (accept(TokenKind::Plus)) {
                lhs = make_expr(
                    Binary{BinaryOp::Add, lhs, parse_multiplicative()});
            } else if (accept(TokenKind::Minus)) {
                lhs = make_expr(
                    Binary{BinaryOp::Sub, lhs, parse_multiplicative()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (accept(TokenKind::Star)) {
                lhs = make_expr(Binary{BinaryOp::Mul, lhs, parse_unary()});
            } else if (accept(TokenKind::Slash)) {
                lhs = make_expr(Binary{BinaryOp::Div, lhs, parse_unary()});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_unary() {
        DepthGuard guard(*this);
        if (accept(TokenKind::Not))
            return make_expr(Unary{UnaryOp::Not, parse_unary()});
        if (accept(TokenKind::Minus))
            return make_expr(Unary{UnaryOp::Minus, parse_unary()});
        if (accept(TokenKind::Plus))
            return make_expr(Unary{UnaryOp::Plus, parse_unary()});
        return parse_primary();
    }

    static std::optional<AggregateFn> aggregate_fn(const Token& t) {
        if (is_keyword(t, "COUNT")) return AggregateFn::Count;
        if (is_keyword(t, "SUM")) return AggregateFn::Sum;
        if (is_keyword(t, "AVG")) return AggregateFn::Avg;
        if (is_keyword(t, "MIN")) return AggregateFn::Min;
        if (is_keyword(t, "MAX")) return AggregateFn::Max;
        return std::nullopt;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::LParen: {
                advance();
                ExprPtr e = parse_expression();
                expect(TokenKind::RParen, "')'");
                return e;
            }
            case TokenKind::Variable:
                advance();
                return make_expr(Term{Var{t.value}});
            case TokenKind::String:
                return make_expr(parse_string_literal());
            case TokenKind::Integer:
            case TokenKind::Decimal:
            case TokenKind::Double:
                advance();
                return make_expr(numeric_literal(t, ""));
            case TokenKind::IriRef:
            case TokenKind::PrefixedName: {
                advance();
                Iri iri{t.kind == TokenKind::IriRef ? resolve_base(t.value)
                                                    : expand_prefixed(t)};
                if (at(TokenKind::LParen))
                    return make_expr(Call{iri, parse_arg_list()});
                return make_expr(Term{std::move(iri)});
            }
            case TokenKind::Identifier: {
                if (is_keyword(t, "TRUE") || is_keyword(t, "FALSE")) {
                    advance();
                    return make_expr(
                        Term{Literal{is_keyword(t, "TRUE") ? "true" : "false",
                                     kXsdBoolean, std::nullopt}});
                }
                if (auto fn = aggregate_fn(t)) {
                    advance();
                    return parse_aggregate(*fn);
                }
                if (peek(1).kind == TokenKind::LParen) {
                    advance();
                    return make_expr(Call{upper(t.value), parse_arg_list()});
                }
                fail(t, "unexpected identifier '" + t.value +
                            "' in expression");
            }
            default:
                fail(t, "expected expression");
        }
    }

    std::vector<ExprPtr> parse_arg_list() {
        expect(TokenKind::LParen, "'('");
        std::vector<ExprPtr> args;
        if (!at(TokenKind::RParen)) {
            args.push_back(parse_expression());
            while (accept(TokenKind::Comma))
                args.push_back(parse_expression());
        }
        expect(TokenKind::RParen, "')'");
        return args;
    }

    ExprPtr parse_aggregate(AggregateFn fn) {
        expect(TokenKind::LParen, "'(' after aggregate");
        Aggregate agg;
        agg.fn = fn;
        if (accept_keyword("DISTINCT")) agg.distinct = true;
        if (accept(TokenKind::Star)) {
            if (fn != AggregateFn::Count)
                fail(peek(), "'*' is only valid in COUNT");
            agg.star = true;
        } else {
            agg.arg = parse_expression();
        }
        expect(TokenKind::RParen, "')'");
        return make_expr(std::move(agg));
    }

    // --- solution modifiers ---

    Modifiers parse_solution_modifiers() {
        Modifiers mods;
        for (;;) {
            if (at_keyword("ORDER")) {
                advance();
                expect_keyword("BY");
                do {
                    mods.order_by.push_back(parse_order_condition());
                } while (order_condition_follows());
            } else if (at_keyword("GROUP")) {
                advance();
                expect_keyword("BY");
                do {
                    mods.group_by.push_back(parse_group_condition());
                } while (group_condition_follows());
            } else if (at_keyword("HAVING")) {
                advance();
                mods.having.push_back(parse_constraint());
                while (at(TokenKind::LParen) ||
                       (at(TokenKind::Identifier) &&
                        peek(1).kind == TokenKind::LParen &&
                        !modifier_keyword_at()))
                    mods.having.push_back(parse_constraint());
            } else if (at_keyword("LIMIT")) {
                advance();
                mods.limit = parse_nonnegative("LIMIT");
            } else if (at_keyword("OFFSET")) {
                advance();
                mods.offset = parse_nonnegative("OFFSET");
            } else {
                break;
            }
        }
        return mods;
    }

    bool modifier_keyword_at() const {
        const Token& t = peek();
        return is_keyword(t, "LIMIT") || is_keyword(t, "OFFSET") ||
               is_keyword(t, "GROUP") || is_keyword(t, "HAVING") ||
               is_keyword(t, "ORDER");
    }

    bool order_condition_follows() const {
        const Token& t = peek();
        if (t.kind == TokenKind::Variable || t.kind == TokenKind::LParen)
            return true;
        if (t.kind != TokenKind::Identifier) return false;
        return !modifier_keyword_at();
    }

    bool group_condition_follows() const { return order_condition_follows(); }

    OrderCondition parse_order_condition() {
        OrderCondition cond;
        if (at_keyword("ASC") || at_keyword("DESC")) {
            cond.descending = at_keyword("DESC");
            advance();
            expect(TokenKind::LParen, "'('");
            cond.expr = parse_expression();
            expect(TokenKind::RParen, "')'");
            return cond;
        }
        if (at(TokenKind::Variable)) {
            cond.expr = make_expr(Term{Var{advance().value}});
            return cond;
        }
        cond.expr = parse_constraint();
        return cond;
    }

    ExprPtr parse_group_condition() {
        if (at(TokenKind::Variable))
            return make_expr(Term{Var{advance().value}});
        if (at(TokenKind::LParen)) {
            advance();
            ExprPtr e = parse_expression();
            if (at_keyword("AS"))
                fail(peek(), "GROUP BY aliases are not supported");
            expect(TokenKind::RParen, "')'");
            return e;
        }
        return parse_constraint();
    }

    std::uint64_t parse_nonnegative(const std::string& what) {
        const Token& t = expect(TokenKind::Integer,
                                "non-negative integer after " + what);
        try {
            return std::stoull(t.value);
        } catch (const std::exception&) {
            fail(t, what + " value out of range");
        }
    }
};

}  // namespace

ParseResult parse_query(std::string_view text, const PrefixEnv& env) {
    if (text.empty() ||
        text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return ParseError{1, 1, "empty query", ""};
    }
    try {
        Parser parser(tokenize(text), text, env);
        return parser.parse();
    } catch (const ParserException& e) {
        return ParseError{e.line, e.column, e.what(), e.snippet};
    } catch (const LexError& e) {
        return ParseError{e.line, e.column, e.what(), ""};
    } catch (const std::exception& e) {
        return ParseError{1, 1, std::string("parse failure: ") + e.what(), ""};
    }
}

}  // namespace tgmeval::sparql
