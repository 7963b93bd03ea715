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

#include "tgmeval/sparql/analysis.hpp"

#include <stdexcept>

namespace tgmeval::sparql {

namespace {

void collect_triples(const std::vector<PatternElement>& elements,
                     std::vector<TriplePattern>& out) {
    for (const auto& e : elements) {
        if (const Bgp* bgp = std::get_if<Bgp>(&e.node)) {
            out.insert(out.end(), bgp->triples.begin(), bgp->triples.end());
        } else if (const OptionalPattern* opt =
                       std::get_if<OptionalPattern>(&e.node)) {
            collect_triples(opt->elements, out);
        } else if (const UnionPattern* u =
                       std::get_if<UnionPattern>(&e.node)) {
            collect_triples(u->left, out);
            collect_triples(u->right, out);
        }
    }
}

void collect_pattern_vars(const std::vector<PatternElement>& elements,
                          std::set<Var>& out) {
    for (const auto& e : elements) {
        if (const Bgp* bgp = std::get_if<Bgp>(&e.node)) {
            for (const auto& tp : bgp->triples) {
                collect_variables(tp.subject, out);
                collect_variables(tp.predicate, out);
                collect_variables(tp.object, out);
            }
        } else if (const OptionalPattern* opt =
                       std::get_if<OptionalPattern>(&e.node)) {
            collect_pattern_vars(opt->elements, out);
        } else if (const UnionPattern* u =
                       std::get_if<UnionPattern>(&e.node)) {
            collect_pattern_vars(u->left, out);
            collect_pattern_vars(u->right, out);
        } else if (const BindPattern* b = std::get_if<BindPattern>(&e.node)) {
            out.insert(b->alias);
        } else if (const ValuesPattern* v =
                       std::get_if<ValuesPattern>(&e.node)) {
            out.insert(v->vars.begin(), v->vars.end());
        }
    }
}

void collect_bind_aliases(const std::vector<PatternElement>& elements,
                          std::map<Var, std::set<Var>>& out) {
    for (const auto& e : elements) {
        if (const OptionalPattern* opt =
                std::get_if<OptionalPattern>(&e.node)) {
            collect_bind_aliases(opt->elements, out);
        } else if (const UnionPattern* u =
                       std::get_if<UnionPattern>(&e.node)) {
            collect_bind_aliases(u->left, out);
            collect_bind_aliases(u->right, out);
        } else if (const BindPattern* b = std::get_if<BindPattern>(&e.node)) {
            std::set<Var> sources;
            collect_variables(b->expr, sources);
            out[b->alias] = std::move(sources);
        }
    }
}

}  // namespace

QueryForm query_form(const QueryAst& ast) { return ast.form; }

void collect_variables(const Term& term, std::set<Var>& out) {
    if (const Var* v = std::get_if<Var>(&term)) out.insert(*v);
}

void collect_variables(const ExprPtr& expr, std::set<Var>& out) {
    if (!expr) return;
    if (const Term* t = std::get_if<Term>(&expr->node)) {
        collect_variables(*t, out);
    } else if (const Aggregate* agg = std::get_if<Aggregate>(&expr->node)) {
        collect_variables(agg->arg, out);
    } else if (const Call* call = std::get_if<Call>(&expr->node)) {
        for (const auto& arg : call->args) collect_variables(arg, out);
    } else if (const Unary* u = std::get_if<Unary>(&expr->node)) {
        collect_variables(u->operand, out);
    } else if (const Binary* b = std::get_if<Binary>(&expr->node)) {
        collect_variables(b->lhs, out);
        collect_variables(b->rhs, out);
    }
}

std::set<Var> pattern_variables(const std::vector<PatternElement>& elements) {
    std::set<Var> out;
    collect_pattern_vars(elements, out);
    return out;
}

std::set<Var> target_variables(const QueryAst& ast) {
    if (ast.form != QueryForm::Select)
        throw std::logic_error("target_variables requires a select query");
    const Projection& proj = *ast.projection;
    if (proj.star) return pattern_variables(ast.where);
    std::map<Var, std::set<Var>> aliases;
    std::set<Var> raw;
    for (const auto& item : proj.items) {
        if (const Var* v = std::get_if<Var>(&item)) {
            raw.insert(*v);
        } else {
            const BoundItem& bound = std::get<BoundItem>(item);
            std::set<Var> sources;
            collect_variables(bound.expr, sources);
            raw.insert(sources.begin(), sources.end());
            aliases[bound.alias] = std::move(sources);
        }
    }
    // an alias referenced by another projection expression resolves to its
    // own sources; alias names never appear in the target set (bounded loop
    // in case of alias chains)
    std::set<Var> out = std::move(raw);
    for (std::size_t round = 0; round <= proj.items.size(); ++round) {
        std::set<Var> next;
        bool expanded = false;
        for (const Var& v : out) {
            auto it = aliases.find(v);
            if (it == aliases.end()) {
                next.insert(v);
            } else {
                expanded = true;
                next.insert(it->second.begin(), it->second.end());
            }
        }
        out = std::move(next);
        if (!expanded) break;
    }
    return out;
}

std::vector<TriplePattern> triple_patterns(const QueryAst& ast) {
    std::vector<TriplePattern> out;
    collect_triples(ast.where, out);
    return out;
}

std::optional<RangeSpec> range_of(const QueryAst& ast) {
    const Modifiers& m = ast.modifiers;
    if (!m.limit && !m.offset) return std::nullopt;
    RangeSpec range;
    range.length = m.limit;  // empty means unbounded (offset without limit)
    range.start = m.offset.value_or(0) + 1;
    return range;
}

std::map<Var, std::set<Var>> alias_sources(const QueryAst& ast) {
    std::map<Var, std::set<Var>> out;
    if (ast.projection && !ast.projection->star) {
        for (const auto& item : ast.projection->items) {
            if (const BoundItem* b = std::get_if<BoundItem>(&item)) {
                std::set<Var> sources;
                collect_variables(b->expr, sources);
                out[b->alias] = std::move(sources);
            }
        }
    }
    collect_bind_aliases(ast.where, out);
    return out;
}

}  // namespace tgmeval::sparql
