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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tgmeval::sparql {

enum class TokenKind {
    Identifier,   // bare name: keyword, builtin function, 'a'
    Variable,     // ?name or $name (value = name without sigil)
    IriRef,       // <...> (value = inner text)
    PrefixedName, // prefix:local (prefix/local split stored)
    BlankLabel,   // _:label (value = label)
    Anon,         // []
    String,       // quoted literal, escapes resolved in value
    LangTag,      // @tag (value = tag)
    Integer,
    Decimal,
    Double,
    DoubleCaret,  // ^^
    LBrace, RBrace, LParen, RParen,
    Dot, Semicolon, Comma, Star,
    Eq, Ne, Lt, Le, Gt, Ge,
    AndAnd, OrOr, Not,
    Plus, Minus, Slash,
    Caret, Pipe,  // lexed so the parser can reject property paths cleanly
    Eof,
};

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string value;   // semantic value (see TokenKind)
    std::string prefix;  // PrefixedName only
    int line = 1;
    int column = 1;
    std::size_t begin = 0;  // byte offsets into the source text
    std::size_t end = 0;
};

struct LexError : std::runtime_error {
    int line;
    int column;
    LexError(int line, int column, const std::string& msg)
        : std::runtime_error(msg), line(line), column(column) {}
};

/// Tokenizes a whole query. Comments (# to end of line) are dropped.
/// Throws LexError on malformed input; always terminates with an Eof token.
std::vector<Token> tokenize(std::string_view text);

/// True for keywords matched case-insensitively.
bool is_keyword(const Token& t, std::string_view upper_keyword);

}  // namespace tgmeval::sparql
