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

#include "tgmeval/sparql/lexer.hpp"

#include <cctype>

namespace tgmeval::sparql {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// PN_CHARS_BASE approximated: ASCII letters plus any non-ASCII byte, so
// UTF-8 identifiers pass through untouched.
bool is_name_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;
}
bool is_name_char(unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80;
}

bool is_iri_char(unsigned char c) {
    if (c <= 0x20) return false;
    switch (c) {
        case '<': case '>': case '"': case '{': case '}':
        case '|': case '^': case '`': case '\\':
            return false;
        default:
            return true;
    }
}

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws_and_comments();
            Token t = next();
            bool done = t.kind == TokenKind::Eof;
            out.push_back(std::move(t));
            if (done) break;
        }
        return out;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    [[noreturn]] void fail(const std::string& msg) {
        throw LexError(line_, col_, msg);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (is_ws(c)) {
                advance();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token start_token() const {
        Token t;
        t.line = line_;
        t.column = col_;
        t.begin = pos_;
        return t;
    }
    Token finish(Token t, TokenKind kind, std::string value = {}) {
        t.kind = kind;
        t.value = std::move(value);
        t.end = pos_;
        return t;
    }

    Token next() {
        Token t = start_token();
        if (eof()) return finish(t, TokenKind::Eof);
        char c = peek();

        if (c == '?' || c == '$') return variable(t);
        if (c == '<') return angle(t);
        if (c == '"' || c == '\'') return string_literal(t);
        if (c == '@') return lang_tag(t);
        if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
        if (c == '.') {
            // a dot followed by a digit starts a decimal
            if (std::isdigit(static_cast<unsigned char>(peek(1))))
                return number(t);
            advance();
            return finish(t, TokenKind::Dot);
        }
        if (c == '_' && peek(1) == ':') return blank_label(t);
        if (c == ':') {
            advance();
            Token out = finish(t, TokenKind::PrefixedName, scan_local());
            out.end = pos_;
            return out;
        }
        if (is_name_start(static_cast<unsigned char>(c))) return name(t);

        advance();
        switch (c) {
            case '{': return finish(t, TokenKind::LBrace);
            case '}': return finish(t, TokenKind::RBrace);
            case '(': return finish(t, TokenKind::LParen);
            case ')': return finish(t, TokenKind::RParen);
            case '[':
                skip_ws_and_comments();
                if (peek() == ']') {
                    advance();
                    return finish(t, TokenKind::Anon);
                }
                fail("blank node property lists are not supported");
            case ']': fail("unexpected ']'");
            case ';': return finish(t, TokenKind::Semicolon);
            case ',': return finish(t, TokenKind::Comma);
            case '*': return finish(t, TokenKind::Star);
            case '=': return finish(t, TokenKind::Eq);
            case '!':
                if (peek() == '=') {
                    advance();
                    return finish(t, TokenKind::Ne);
                }
                return finish(t, TokenKind::Not);
            case '&':
                if (peek() == '&') {
                    advance();
                    return finish(t, TokenKind::AndAnd);
                }
                fail("expected '&&'");
            case '|':
                if (peek() == '|') {
                    advance();
                    return finish(t, TokenKind::OrOr);
                }
                return finish(t, TokenKind::Pipe);
            case '^':
                if (peek() == '^') {
                    advance();
                    return finish(t, TokenKind::DoubleCaret);
                }
                return finish(t, TokenKind::Caret);
            case '+': return finish(t, TokenKind::Plus);
            case '-': return finish(t, TokenKind::Minus);
            case '/': return finish(t, TokenKind::Slash);
            case '>':
                if (peek() == '=') {
                    advance();
                    return finish(t, TokenKind::Ge);
                }
                return finish(t, TokenKind::Gt);
            default:
                fail(std::string("unexpected character '") + c + "'");
        }
    }

    Token variable(Token t) {
        advance();  // sigil
        std::string name;
        if (!(is_name_start(static_cast<unsigned char>(peek())) ||
              std::isdigit(static_cast<unsigned char>(peek()))))
            fail("expected variable name after '?'");
        while (is_name_char(static_cast<unsigned char>(peek())))
            name += advance();
        return finish(t, TokenKind::Variable, std::move(name));
    }

    // '<' is an IRI reference only if a '>' closes it over valid IRI
    // characters; otherwise it is the less-than operator.
    Token angle(Token t) {
        std::size_t i = pos_ + 1;
        while (i < text_.size() &&
               is_iri_char(static_cast<unsigned char>(text_[i])))
            ++i;
        if (i < text_.size() && text_[i] == '>') {
            advance();  // <
            std::string value;
            while (peek() != '>') value += advance();
            advance();  // >
            return finish(t, TokenKind::IriRef, std::move(value));
        }
        advance();  // <
        if (peek() == '=') {
            advance();
            return finish(t, TokenKind::Le);
        }
        return finish(t, TokenKind::Lt);
    }

    Token string_literal(Token t) {
        char quote = advance();
        bool long_form = peek() == quote && peek(1) == quote;
        if (long_form) {
            advance();
            advance();
        }
        std::string value;
        for (;;) {
            if (eof()) fail("unterminated string literal");
            char c = advance();
            if (c == '\\') {
                if (eof()) fail("dangling escape in string literal");
                char e = advance();
                switch (e) {
                    case 't': value += '\t'; break;
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 'b': value += '\b'; break;
                    case 'f': value += '\f'; break;
                    case '"': value += '"'; break;
                    case '\'': value += '\''; break;
                    case '\\': value += '\\'; break;
                    default:
                        fail(std::string("unknown escape '\\") + e + "'");
                }
                continue;
            }
            if (c == quote) {
                if (!long_form) break;
                if (peek() == quote && peek(1) == quote) {
                    advance();
                    advance();
                    break;
                }
                value += c;
                continue;
            }
            if (!long_form && (c == '\n' || c == '\r'))
                fail("newline in string literal");
            value += c;
        }
        return finish(t, TokenKind::String, std::move(value));
    }

    Token lang_tag(Token t) {
        advance();  // @
        std::string tag;
        if (!std::isalpha(static_cast<unsigned char>(peek())))
            fail("expected language tag after '@'");
        while (std::isalpha(static_cast<unsigned char>(peek())))
            tag += advance();
        while (peek() == '-') {
            tag += advance();
            if (!std::isalnum(static_cast<unsigned char>(peek())))
                fail("malformed language tag");
            while (std::isalnum(static_cast<unsigned char>(peek())))
                tag += advance();
        }
        return finish(t, TokenKind::LangTag, std::move(tag));
    }

    Token number(Token t) {
        std::string value;
        bool has_dot = false, has_exp = false;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            value += advance();
        if (peek() == '.' &&
            std::isdigit(static_cast<unsigned char>(peek(1)))) {
            has_dot = true;
            value += advance();
            while (std::isdigit(static_cast<unsigned char>(peek())))
                value += advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            char sign = peek(1);
            std::size_t digit_at = (sign == '+' || sign == '-') ? 2 : 1;
            if (std::isdigit(static_cast<unsigned char>(peek(digit_at)))) {
                has_exp = true;
                value += advance();
                if (peek() == '+' || peek() == '-') value += advance();
                while (std::isdigit(static_cast<unsigned char>(peek())))
                    value += advance();
            }
        }
        TokenKind kind = has_exp   ? TokenKind::Double
                         : has_dot ? TokenKind::Decimal
                                   : TokenKind::Integer;
        return finish(t, kind, std::move(value));
    }

    Token blank_label(Token t) {
        advance();  // _
        advance();  // :
        std::string label;
        if (!(is_name_start(static_cast<unsigned char>(peek())) ||
              std::isdigit(static_cast<unsigned char>(peek()))))
            fail("expected blank node label after '_:'");
        while (is_name_char(static_cast<unsigned char>(peek())) ||
               peek() == '.') {
            label += advance();
        }
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            rewind_one('.');
        }
        return finish(t, TokenKind::BlankLabel, std::move(label));
    }

    // Bare name: either an identifier/keyword or a prefixed name when a ':'
    // follows. The local part may contain dots and %/\ escapes (trailing
    // dots are given back).
    Token name(Token t) {
        std::string head;
        while (is_name_char(static_cast<unsigned char>(peek())) ||
               (peek() == '.' && is_name_char(static_cast<unsigned char>(
                                     peek(1))))) {
            head += advance();
        }
        if (peek() != ':') {
            return finish(t, TokenKind::Identifier, std::move(head));
        }
        advance();  // :
        Token out = finish(t, TokenKind::PrefixedName, scan_local());
        out.end = pos_;
        out.prefix = std::move(head);
        return out;
    }

    std::string scan_local() {
        std::string local;
        for (;;) {
            char c = peek();
            if (is_name_char(static_cast<unsigned char>(c)) || c == ':') {
                local += advance();
            } else if (c == '.') {
                local += advance();
            } else if (c == '%') {
                if (std::isxdigit(static_cast<unsigned char>(peek(1))) &&
                    std::isxdigit(static_cast<unsigned char>(peek(2)))) {
                    local += advance();
                    local += advance();
                    local += advance();
                } else {
                    fail("malformed %-escape in prefixed name");
                }
            } else if (c == '\\') {
                advance();
                if (eof()) fail("dangling escape in prefixed name");
                local += advance();  // escaped punctuation, kept verbatim
            } else {
                break;
            }
        }
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            rewind_one('.');
        }
        return local;
    }

    // Puts a single just-consumed character back (used for trailing dots
    // that belong to the triple terminator, not the name).
    void rewind_one(char c) {
        --pos_;
        if (c == '\n') {
            --line_;
        } else {
            --col_;
        }
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    return Lexer(text).run();
}

bool is_keyword(const Token& t, std::string_view upper_keyword) {
    if (t.kind != TokenKind::Identifier) return false;
    if (t.value.size() != upper_keyword.size()) return false;
    for (std::size_t i = 0; i < upper_keyword.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(t.value[i])) !=
            upper_keyword[i])
            return false;
    }
    return true;
}

}  // namespace tgmeval::sparql
