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

#include "tgmeval/normalize.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "tgmeval/sparql/lexer.hpp"

namespace tgmeval::normalize {

namespace {

using sparql::Token;
using sparql::TokenKind;

// Fresh variables are named tgm_eval_<k>; k skips numbers already taken by
// variables present in the input.
class FreshVars {
  public:
    explicit FreshVars(std::string_view text) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] != '?' && text[i] != '$') continue;
            std::string name;
            std::size_t j = i + 1;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) ||
                    text[j] == '_'))
                name += text[j++];
            if (!name.empty()) used_.insert(std::move(name));
        }
    }

    std::string next() {
        std::string name;
        do {
            name = "tgm_eval_" + std::to_string(counter_++);
        } while (used_.count(name));
        used_.insert(name);
        return name;
    }

  private:
    std::set<std::string> used_;
    int counter_ = 1;
};

// String-literal and IRI bytes are blanked so text rules cannot fire inside
// them. Unlexable text is left unmasked; it cannot parse either way.
std::string masked_copy(const std::string& text) {
    std::string masked = text;
    try {
        for (const Token& t : sparql::tokenize(text)) {
            if (t.kind == TokenKind::String || t.kind == TokenKind::IriRef) {
                for (std::size_t i = t.begin; i < t.end && i < masked.size();
                     ++i)
                    masked[i] = '\x01';
            }
        }
    } catch (const std::exception&) {
    }
    return masked;
}

std::string expand_replacement(const std::string& tmpl,
                               const std::smatch& match, FreshVars& fresh) {
    std::string out;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        char c = tmpl[i];
        if (c != '$') {
            out += c;
            continue;
        }
        if (i + 1 < tmpl.size() && tmpl[i + 1] == '$') {
            out += '$';
            ++i;
        } else if (i + 1 < tmpl.size() &&
                   std::isdigit(static_cast<unsigned char>(tmpl[i + 1]))) {
            std::size_t n = tmpl[++i] - '0';
            if (n < match.size()) out += match[n].str();
        } else if (tmpl.compare(i, 8, "${fresh}") == 0) {
            out += "?" + fresh.next();
            i += 7;
        } else {
            out += '$';
        }
    }
    return out;
}

// Capture text must come from the original string, so matching runs on the
// masked copy but extraction indexes into the source.
bool apply_text_rule(std::string& text, const RewriteRule& rule,
                     FreshVars& fresh) {
    std::regex re(rule.pattern,
                  std::regex::ECMAScript | std::regex::icase);
    std::string masked = masked_copy(text);
    std::string out;
    std::size_t consumed = 0;
    bool fired = false;
    auto begin = std::sregex_iterator(masked.begin(), masked.end(), re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        std::size_t pos = static_cast<std::size_t>(m.position(0));
        std::size_t len = static_cast<std::size_t>(m.length(0));
        // rebuild the match over the original text for capture extraction
        std::smatch orig;
        std::string slice = text.substr(pos, len);
        if (!std::regex_match(slice, orig, re)) continue;
        out += text.substr(consumed, pos - consumed);
        out += expand_replacement(rule.replacement, orig, fresh);
        consumed = pos + len;
        fired = true;
    }
    if (!fired) return false;
    out += text.substr(consumed);
    text = std::move(out);
    return true;
}

bool is_agg_keyword(const Token& t) {
    return sparql::is_keyword(t, "COUNT") || sparql::is_keyword(t, "SUM") ||
           sparql::is_keyword(t, "AVG") || sparql::is_keyword(t, "MIN") ||
           sparql::is_keyword(t, "MAX");
}

std::size_t match_paren(const std::vector<Token>& tokens, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < tokens.size(); ++i) {
        if (tokens[i].kind == TokenKind::LParen) ++depth;
        if (tokens[i].kind == TokenKind::RParen && --depth == 0) return i;
    }
    return std::string::npos;
}

struct Edit {
    std::size_t begin, end;
    std::string text;
};

// ORDER BY [ASC|DESC](AGG(args)) and bare ORDER BY AGG(args): the aggregate
// moves into the projection under a fresh alias and the sort key becomes
// that alias.
bool apply_hoist_rule(std::string& text, FreshVars& fresh) {
    std::vector<Token> tokens;
    try {
        tokens = sparql::tokenize(text);
    } catch (const std::exception&) {
        return false;
    }

    std::size_t select_i = std::string::npos;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (sparql::is_keyword(tokens[i], "SELECT")) {
            select_i = i;
            break;
        }
    }
    if (select_i == std::string::npos) return false;

    std::size_t insert_at = std::string::npos;
    for (std::size_t i = select_i + 1; i < tokens.size(); ++i) {
        if (tokens[i].kind == TokenKind::Star &&
            i <= select_i + 2)  // SELECT [DISTINCT|REDUCED] *
            return false;       // cannot add an alias to a star projection
        if (sparql::is_keyword(tokens[i], "WHERE") ||
            tokens[i].kind == TokenKind::LBrace) {
            insert_at = tokens[i].begin;
            break;
        }
    }
    if (insert_at == std::string::npos) return false;

    std::size_t order_start = std::string::npos;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (sparql::is_keyword(tokens[i], "ORDER") &&
            sparql::is_keyword(tokens[i + 1], "BY")) {
            order_start = i + 2;
            break;
        }
    }
    if (order_start == std::string::npos) return false;

    std::size_t region_end = tokens.size();
    for (std::size_t i = order_start; i < tokens.size(); ++i) {
        if (sparql::is_keyword(tokens[i], "LIMIT") ||
            sparql::is_keyword(tokens[i], "OFFSET") ||
            sparql::is_keyword(tokens[i], "GROUP") ||
            sparql::is_keyword(tokens[i], "HAVING") ||
            tokens[i].kind == TokenKind::Eof) {
            region_end = i;
            break;
        }
    }

    std::vector<Edit> edits;
    std::string projection_add;
    for (std::size_t i = order_start; i < region_end;) {
        bool directed = (sparql::is_keyword(tokens[i], "ASC") ||
                         sparql::is_keyword(tokens[i], "DESC")) &&
                        i + 3 < region_end &&
                        tokens[i + 1].kind == TokenKind::LParen &&
                        is_agg_keyword(tokens[i + 2]) &&
                        tokens[i + 3].kind == TokenKind::LParen;
        if (directed) {
            std::size_t inner_close = match_paren(tokens, i + 3);
            if (inner_close == std::string::npos ||
                inner_close + 1 >= tokens.size() ||
                tokens[inner_close + 1].kind != TokenKind::RParen) {
                ++i;
                continue;
            }
            std::size_t outer_close = inner_close + 1;
            std::string agg_src =
                text.substr(tokens[i + 2].begin,
                            tokens[inner_close].end - tokens[i + 2].begin);
            std::string v = fresh.next();
            projection_add += "(" + agg_src + " AS ?" + v + ") ";
            bool desc = sparql::is_keyword(tokens[i], "DESC");
            edits.push_back({tokens[i].begin, tokens[outer_close].end,
                             std::string(desc ? "DESC" : "ASC") + "(?" + v +
                                 ")"});
            i = outer_close + 1;
        } else if (is_agg_keyword(tokens[i]) && i + 1 < region_end &&
                   tokens[i + 1].kind == TokenKind::LParen) {
            std::size_t close = match_paren(tokens, i + 1);
            if (close == std::string::npos) {
                ++i;
                continue;
            }
            std::string agg_src = text.substr(
                tokens[i].begin, tokens[close].end - tokens[i].begin);
            std::string v = fresh.next();
            projection_add += "(" + agg_src + " AS ?" + v + ") ";
            edits.push_back({tokens[i].begin, tokens[close].end, "?" + v});
            i = close + 1;
        } else {
            ++i;
        }
    }
    if (edits.empty()) return false;
    edits.push_back({insert_at, insert_at, projection_add});

    std::sort(edits.begin(), edits.end(),
              [](const Edit& a, const Edit& b) { return a.begin > b.begin; });
    for (const Edit& e : edits)
        text.replace(e.begin, e.end - e.begin, e.text);
    return true;
}

}  // namespace

std::vector<RewriteRule> default_rules() {
    std::vector<RewriteRule> rules;
    rules.push_back(RewriteRule{
        "alias-bare-aggregate",
        RewriteRule::Kind::Text,
        R"((SELECT\s+(?:DISTINCT\s+|REDUCED\s+)?)(COUNT|SUM|AVG|MIN|MAX)\s*(\(\s*(?:DISTINCT\s+)?(?:\*|[?$][A-Za-z0-9_]+)\s*\)))",
        "$1($2$3 AS ${fresh})",
        "alias a bare aggregate in the projection"});
    rules.push_back(RewriteRule{
        "hoist-order-by-aggregate",
        RewriteRule::Kind::HoistOrderByAggregate,
        "",
        "",
        "move an aggregate sort key into the projection under an alias"});
    return rules;
}

NormalizationResult normalize_query(std::string_view text,
                                    const std::vector<RewriteRule>& rules) {
    NormalizationResult result;
    result.text = std::string(text);
    FreshVars fresh(text);
    for (const RewriteRule& rule : rules) {
        std::string before = result.text;
        bool fired = false;
        if (rule.kind == RewriteRule::Kind::Text) {
            fired = apply_text_rule(result.text, rule, fresh);
        } else {
            fired = apply_hoist_rule(result.text, fresh);
        }
        if (fired && result.text != before) result.applied.push_back(rule.id);
    }
    result.changed = !result.applied.empty();
    return result;
}

}  // namespace tgmeval::normalize
