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

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tgmeval::sparql {

/// A query variable, stored without the ?/$ sigil.
struct Var {
    std::string name;
    auto operator<=>(const Var&) const = default;
};

/// An absolute IRI (prefixed names are expanded at parse time).
struct Iri {
    std::string value;
    auto operator<=>(const Iri&) const = default;
};

/// An RDF literal. Plain numeric/boolean tokens carry their xsd datatype.
struct Literal {
    std::string lexical;
    std::optional<std::string> datatype;
    std::optional<std::string> lang;
    auto operator<=>(const Literal&) const = default;
};

struct BlankNode {
    std::string label;
    auto operator<=>(const BlankNode&) const = default;
};

using Term = std::variant<Var, Iri, Literal, BlankNode>;

/// One triple pattern; literals never appear in subject/predicate position.
struct TriplePattern {
    Term subject;
    Term predicate;
    Term object;
    bool operator==(const TriplePattern&) const = default;
};

// --- expressions (FILTER/BIND/HAVING/ORDER BY, aggregate projections) ---

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Deep equality; null compares equal only to null.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool exprs_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b);

enum class AggregateFn { Count, Sum, Avg, Min, Max };
enum class UnaryOp { Not, Minus, Plus };
enum class BinaryOp { Or, And, Eq, Ne, Lt, Gt, Le, Ge, Add, Sub, Mul, Div };

struct Aggregate {
    AggregateFn fn = AggregateFn::Count;
    bool distinct = false;
    bool star = false;  // COUNT(*), arg is null
    ExprPtr arg;
    bool operator==(const Aggregate& o) const {
        return fn == o.fn && distinct == o.distinct && star == o.star &&
               expr_equal(arg, o.arg);
    }
};

/// A built-in call (name stored uppercase) or an IRI function call.
struct Call {
    std::variant<std::string, Iri> callee;
    std::vector<ExprPtr> args;
    bool operator==(const Call& o) const {
        return callee == o.callee && exprs_equal(args, o.args);
    }
};

struct Unary {
    UnaryOp op = UnaryOp::Not;
    ExprPtr operand;
    bool operator==(const Unary& o) const {
        return op == o.op && expr_equal(operand, o.operand);
    }
};

struct Binary {
    BinaryOp op = BinaryOp::Or;
    ExprPtr lhs;
    ExprPtr rhs;
    bool operator==(const Binary& o) const {
        return op == o.op && expr_equal(lhs, o.lhs) && expr_equal(rhs, o.rhs);
    }
};

struct Expr {
    std::variant<Term, Aggregate, Call, Unary, Binary> node;
    bool operator==(const Expr&) const = default;
};

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return *a == *b;
}

inline bool exprs_equal(const std::vector<ExprPtr>& a,
                        const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!expr_equal(a[i], b[i])) return false;
    return true;
}

inline ExprPtr make_expr(std::variant<Term, Aggregate, Call, Unary, Binary> n) {
    return std::make_shared<const Expr>(Expr{std::move(n)});
}

// --- projection ---

/// An aliased projection expression: (expr AS ?alias).
struct BoundItem {
    ExprPtr expr;
    Var alias;
    bool operator==(const BoundItem& o) const {
        return alias == o.alias && expr_equal(expr, o.expr);
    }
};

using ProjectionItem = std::variant<Var, BoundItem>;

enum class SelectDedup { None, Distinct, Reduced };

struct Projection {
    bool star = false;  // SELECT *; items is empty
    SelectDedup dedup = SelectDedup::None;
    std::vector<ProjectionItem> items;
    bool operator==(const Projection&) const = default;
};

// --- graph patterns ---

struct PatternElement;

/// A run of consecutive triple patterns.
struct Bgp {
    std::vector<TriplePattern> triples;
    bool operator==(const Bgp&) const = default;
};

struct OptionalPattern {
    std::vector<PatternElement> elements;
    bool operator==(const OptionalPattern& o) const;
};

struct UnionPattern {
    std::vector<PatternElement> left;
    std::vector<PatternElement> right;
    bool operator==(const UnionPattern& o) const;
};

struct FilterPattern {
    ExprPtr expr;
    bool operator==(const FilterPattern& o) const {
        return expr_equal(expr, o.expr);
    }
};

struct BindPattern {
    ExprPtr expr;
    Var alias;
    bool operator==(const BindPattern& o) const {
        return alias == o.alias && expr_equal(expr, o.expr);
    }
};

/// VALUES block; a missing cell is UNDEF.
struct ValuesPattern {
    std::vector<Var> vars;
    std::vector<std::vector<std::optional<Term>>> rows;
    bool operator==(const ValuesPattern&) const = default;
};

struct PatternElement {
    std::variant<Bgp, OptionalPattern, UnionPattern, FilterPattern, BindPattern,
                 ValuesPattern>
        node;
    bool operator==(const PatternElement&) const = default;
};

inline bool OptionalPattern::operator==(const OptionalPattern& o) const {
    return elements == o.elements;
}
inline bool UnionPattern::operator==(const UnionPattern& o) const {
    return left == o.left && right == o.right;
}

// --- solution modifiers ---

struct OrderCondition {
    ExprPtr expr;
    bool descending = false;
    bool operator==(const OrderCondition& o) const {
        return descending == o.descending && expr_equal(expr, o.expr);
    }
};

struct Modifiers {
    std::vector<OrderCondition> order_by;
    std::vector<ExprPtr> group_by;
    std::vector<ExprPtr> having;
    std::optional<std::uint64_t> limit;
    std::optional<std::uint64_t> offset;
    bool operator==(const Modifiers& o) const {
        return order_by == o.order_by && exprs_equal(group_by, o.group_by) &&
               exprs_equal(having, o.having) && limit == o.limit &&
               offset == o.offset;
    }
};

enum class QueryForm { Ask, Select };

struct QueryAst {
    QueryForm form = QueryForm::Select;
    std::optional<Projection> projection;  // engaged iff Select
    std::vector<PatternElement> where;
    Modifiers modifiers;
    bool operator==(const QueryAst&) const = default;
};

/// Parse failure; position refers inside the input text (1-based).
struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
    std::string snippet;
};

using ParseResult = std::variant<QueryAst, ParseError>;

inline bool parse_ok(const ParseResult& r) {
    return std::holds_alternative<QueryAst>(r);
}
inline const QueryAst& parsed_ast(const ParseResult& r) {
    return std::get<QueryAst>(r);
}
inline const ParseError& parse_error(const ParseResult& r) {
    return std::get<ParseError>(r);
}

}  // namespace tgmeval::sparql
