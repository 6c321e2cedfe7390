#pragma once

#include <string_view>
#include <vector>

#include "xray/span.hpp"

namespace xray {

enum class TokenKind {
    Identifier,
    Keyword,
    IntLiteral,
    DoubleLiteral,
    StringLiteral,
    CharLiteral,
    Punct,
    EndOfFile,
};

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string_view text;  // view into the source buffer
    Span span;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_kw(std::string_view t) const { return is(TokenKind::Keyword, t); }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
};

/// Splits source text into tokens. Whitespace and comments are dropped; every
/// other byte must start a token or a LexError is raised at its offset.
/// The final token is always EndOfFile.
std::vector<Token> tokenize(std::string_view text);

}  // namespace xray
