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

#include "tgmeval/sparql/serialize.hpp"

#include <cctype>
#include <sstream>

namespace tgmeval::sparql {

namespace {

constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
constexpr const char* kXsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
constexpr const char* kXsdDouble = "http://www.w3.org/2001/XMLSchema#double";
constexpr const char* kXsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// True when the lexical form re-lexes as the bare token of its datatype, so
// the literal can be emitted unquoted without changing its parse.
bool bare_numeric_ok(const Literal& lit) {
    if (!lit.datatype || lit.lang) return false;
    std::string_view s = lit.lexical;
    bool negative = !s.empty() && (s[0] == '-');
    if (negative) s.remove_prefix(1);
    const std::string& dt = *lit.datatype;
    if (dt == kXsdInteger) return all_digits(s);
    if (dt == kXsdDecimal) {
        auto dot = s.find('.');
        if (dot == std::string_view::npos) return false;
        return (dot == 0 || all_digits(s.substr(0, dot))) &&
               all_digits(s.substr(dot + 1));
    }
    if (dt == kXsdDouble) {
        auto e = s.find_first_of("eE");
        if (e == std::string_view::npos || e == 0) return false;
        std::string_view mant = s.substr(0, e);
        std::string_view exp = s.substr(e + 1);
        if (!exp.empty() && (exp[0] == '+' || exp[0] == '-'))
            exp.remove_prefix(1);
        if (!all_digits(exp)) return false;
        auto dot = mant.find('.');
        if (dot == std::string_view::npos) return all_digits(mant);
        return (dot == 0 || all_digits(mant.substr(0, dot))) &&
               all_digits(mant.substr(dot + 1));
    }
    return false;
}

void escape_into(std::ostream& os, const std::string& s) {
    for (char c : s) {
        switch (c) {
            case '\\': os << "\\\\"; break;
            case '"': os << "\\\""; break;
            case '\n': os << "\\n"; break;
            case '\r': os << "\\r"; break;
            case '\t': os << "\\t"; break;
            case '\b': os << "\\b"; break;
            case '\f': os << "\\f"; break;
            default: os << c;
        }
    }
}

class Writer {
  public:
    std::string query(const QueryAst& ast) {
        if (ast.form == QueryForm::Ask) {
            os_ << "ASK WHERE ";
        } else {
            os_ << "SELECT ";
            projection(*ast.projection);
            os_ << " WHERE ";
        }
        group(ast.where);
        modifiers(ast.modifiers);
        return os_.str();
    }

    std::string one_term(const Term& t) {
        term(t);
        return os_.str();
    }
    std::string one_triple(const TriplePattern& tp) {
        term(tp.subject);
        os_ << ' ';
        term(tp.predicate);
        os_ << ' ';
        term(tp.object);
        return os_.str();
    }
    std::string one_expr(const ExprPtr& e) {
        expr(e);
        return os_.str();
    }

  private:
    std::ostringstream os_;

    void projection(const Projection& p) {
        if (p.dedup == SelectDedup::Distinct) os_ << "DISTINCT ";
        if (p.dedup == SelectDedup::Reduced) os_ << "REDUCED ";
        if (p.star) {
            os_ << "*";
            return;
        }
        bool first = true;
        for (const auto& item : p.items) {
            if (!first) os_ << ' ';
            first = false;
            if (const Var* v = std::get_if<Var>(&item)) {
                os_ << '?' << v->name;
            } else {
                const BoundItem& b = std::get<BoundItem>(item);
                os_ << '(';
                expr(b.expr);
                os_ << " AS ?" << b.alias.name << ')';
            }
        }
    }

    void group(const std::vector<PatternElement>& elements) {
        os_ << '{';
        for (const auto& e : elements) {
            os_ << ' ';
            element(e);
        }
        os_ << " }";
    }

    void element(const PatternElement& e) {
        if (const Bgp* bgp = std::get_if<Bgp>(&e.node)) {
            bool first = true;
            for (const auto& tp : bgp->triples) {
                if (!first) os_ << ' ';
                first = false;
                term(tp.subject);
                os_ << ' ';
                term(tp.predicate);
                os_ << ' ';
                term(tp.object);
                os_ << " .";
            }
        } else if (const OptionalPattern* opt =
                       std::get_if<OptionalPattern>(&e.node)) {
            os_ << "OPTIONAL ";
            group(opt->elements);
        } else if (const UnionPattern* u =
                       std::get_if<UnionPattern>(&e.node)) {
            group(u->left);
            os_ << " UNION ";
            group(u->right);
        } else if (const FilterPattern* f =
                       std::get_if<FilterPattern>(&e.node)) {
            os_ << "FILTER(";
            expr(f->expr);
            os_ << ')';
        } else if (const BindPattern* b = std::get_if<BindPattern>(&e.node)) {
            os_ << "BIND(";
            expr(b->expr);
            os_ << " AS ?" << b->alias.name << ')';
        } else if (const ValuesPattern* v =
                       std::get_if<ValuesPattern>(&e.node)) {
            os_ << "VALUES (";
            bool first = true;
            for (const auto& var : v->vars) {
                if (!first) os_ << ' ';
                first = false;
                os_ << '?' << var.name;
            }
            os_ << ") {";
            for (const auto& row : v->rows) {
                os_ << " (";
                bool f2 = true;
                for (const auto& cell : row) {
                    if (!f2) os_ << ' ';
                    f2 = false;
                    if (cell) {
                        term(*cell);
                    } else {
                        os_ << "UNDEF";
                    }
                }
                os_ << ')';
            }
            os_ << " }";
        }
    }

    void modifiers(const Modifiers& m) {
        if (!m.group_by.empty()) {
            os_ << " GROUP BY";
            for (const auto& e : m.group_by) {
                os_ << ' ';
                expr_grouping(e);
            }
        }
        for (const auto& h : m.having) {
            os_ << " HAVING(";
            expr(h);
            os_ << ')';
        }
        if (!m.order_by.empty()) {
            os_ << " ORDER BY";
            for (const auto& cond : m.order_by) {
                os_ << ' ';
                if (cond.descending) {
                    os_ << "DESC(";
                    expr(cond.expr);
                    os_ << ')';
                } else {
                    expr_grouping(cond.expr);
                }
            }
        }
        if (m.limit) os_ << " LIMIT " << *m.limit;
        if (m.offset) os_ << " OFFSET " << *m.offset;
    }

    // Sort/group keys that are not plain variables or calls need their own
    // parentheses to re-parse as one condition.
    void expr_grouping(const ExprPtr& e) {
        bool needs_parens = std::holds_alternative<Binary>(e->node) ||
                            std::holds_alternative<Unary>(e->node) ||
                            (std::holds_alternative<Term>(e->node) &&
                             !std::holds_alternative<Var>(
                                 std::get<Term>(e->node)));
        if (needs_parens) os_ << '(';
        expr(e);
        if (needs_parens) os_ << ')';
    }

    void term(const Term& t) {
        if (const Var* v = std::get_if<Var>(&t)) {
            os_ << '?' << v->name;
        } else if (const Iri* iri = std::get_if<Iri>(&t)) {
            os_ << '<' << iri->value << '>';
        } else if (const BlankNode* b = std::get_if<BlankNode>(&t)) {
            os_ << "_:" << b->label;
        } else {
            literal(std::get<Literal>(t));
        }
    }

    void literal(const Literal& lit) {
        if (lit.datatype && *lit.datatype == kXsdBoolean &&
            (lit.lexical == "true" || lit.lexical == "false")) {
            os_ << lit.lexical;
            return;
        }
        if (bare_numeric_ok(lit)) {
            os_ << lit.lexical;
            return;
        }
        os_ << '"';
        escape_into(os_, lit.lexical);
        os_ << '"';
        if (lit.lang) {
            os_ << '@' << *lit.lang;
        } else if (lit.datatype) {
            os_ << "^^<" << *lit.datatype << '>';
        }
    }

    void expr(const ExprPtr& e) {
        if (const Term* t = std::get_if<Term>(&e->node)) {
            term(*t);
        } else if (const Aggregate* agg = std::get_if<Aggregate>(&e->node)) {
            switch (agg->fn) {
                case AggregateFn::Count: os_ << "COUNT("; break;
                case AggregateFn::Sum: os_ << "SUM("; break;
                case AggregateFn::Avg: os_ << "AVG("; break;
                case AggregateFn::Min: os_ << "MIN("; break;
                case AggregateFn::Max: os_ << "MAX("; break;
            }
            if (agg->distinct) os_ << "DISTINCT ";
            if (agg->star) {
                os_ << '*';
            } else {
                expr(agg->arg);
            }
            os_ << ')';
        } else if (const Call* call = std::get_if<Call>(&e->node)) {
            if (const std::string* name =
                    std::get_if<std::string>(&call->callee)) {
                os_ << *name;
            } else {
                os_ << '<' << std::get<Iri>(call->callee).value << '>';
            }
            os_ << '(';
            bool first = true;
            for (const auto& arg : call->args) {
                if (!first) os_ << ", ";
                first = false;
                expr(arg);
            }
            os_ << ')';
        } else if (const Unary* u = std::get_if<Unary>(&e->node)) {
            os_ << '(';
            switch (u->op) {
                case UnaryOp::Not: os_ << '!'; break;
                case UnaryOp::Minus: os_ << '-'; break;
                case UnaryOp::Plus: os_ << '+'; break;
            }
            expr(u->operand);
            os_ << ')';
        } else if (const Binary* b = std::get_if<Binary>(&e->node)) {
            os_ << '(';
            expr(b->lhs);
            switch (b->op) {
                case BinaryOp::Or: os_ << " || "; break;
                case BinaryOp::And: os_ << " && "; break;
                case BinaryOp::Eq: os_ << " = "; break;
                case BinaryOp::Ne: os_ << " != "; break;
                case BinaryOp::Lt: os_ << " < "; break;
                case BinaryOp::Gt: os_ << " > "; break;
                case BinaryOp::Le: os_ << " <= "; break;
                case BinaryOp::Ge: os_ << " >= "; break;
                case BinaryOp::Add: os_ << " + "; break;
                case BinaryOp::Sub: os_ << " - "; break;
                case BinaryOp::Mul: os_ << " * "; break;
                case BinaryOp::Div: os_ << " / "; break;
            }
            expr(b->rhs);
            os_ << ')';
        }
    }
};

}  // namespace

std::string serialize(const QueryAst& ast) { return Writer().query(ast); }

std::string serialize(const TriplePattern& tp) {
    return Writer().one_triple(tp);
}

std::string serialize(const Term& term) { return Writer().one_term(term); }

std::string serialize_expr(const ExprPtr& expr) {
    return Writer().one_expr(expr);
}

}  // namespace tgmeval::sparql
