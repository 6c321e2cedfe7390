#include "xray/token.hpp"

#include <array>
#include <cctype>
#include <string>
#include <unordered_set>

#include "xray/errors.hpp"

namespace xray {

LineCol line_col_at(std::string_view text, std::size_t offset) {
    LineCol lc;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++lc.line;
            lc.col = 1;
        } else {
            ++lc.col;
        }
    }
    return lc;
}

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "class", "extends", "if", "else", "for", "while", "try", "catch", "finally",
    "return", "new", "this", "super", "public", "private", "protected", "static",
    "final", "abstract", "true", "false", "null", "void", "int", "double",
    "float", "long", "short", "byte", "boolean", "char",
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_part(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Multi-character operators, longest first.
constexpr std::array<std::string_view, 13> kLongPuncts = {
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=",
};

constexpr std::string_view kSinglePuncts = "{}()[];,.=+-*/%<>!&|^~?:";

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto push = [&](TokenKind kind, std::size_t begin, std::size_t end) {
        tokens.push_back(Token{kind, text.substr(begin, end - begin), Span{begin, end}});
    };

    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '/') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < n && text[i + 1] == '*') {
            std::size_t start = i;
            i += 2;
            while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) ++i;
            if (i + 1 >= n) throw LexError("unterminated block comment", start);
            i += 2;
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t begin = i;
            while (i < n && is_ident_part(text[i])) ++i;
            std::string_view word = text.substr(begin, i - begin);
            push(kKeywords.count(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, i);
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
            std::size_t begin = i;
            bool floating = (c == '.');
            while (i < n && is_digit(text[i])) ++i;
            if (i < n && text[i] == '.' && i + 1 < n && is_digit(text[i + 1])) {
                floating = true;
                ++i;
                while (i < n && is_digit(text[i])) ++i;
            } else if (floating) {
                ++i;  // leading '.', consume fraction digits
                while (i < n && is_digit(text[i])) ++i;
            }
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t mark = i;
                ++i;
                if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
                if (i < n && is_digit(text[i])) {
                    floating = true;
                    while (i < n && is_digit(text[i])) ++i;
                } else {
                    i = mark;  // not an exponent after all
                }
            }
            if (i < n && (text[i] == 'f' || text[i] == 'F' || text[i] == 'd' || text[i] == 'D')) {
                floating = true;
                ++i;
            } else if (i < n && (text[i] == 'l' || text[i] == 'L')) {
                ++i;
            }
            push(floating ? TokenKind::DoubleLiteral : TokenKind::IntLiteral, begin, i);
            continue;
        }
        if (c == '"' || c == '\'') {
            const char quote = c;
            std::size_t begin = i;
            ++i;
            while (i < n && text[i] != quote) {
                if (text[i] == '\n') throw LexError("unterminated literal", begin);
                if (text[i] == '\\' && i + 1 < n) ++i;
                ++i;
            }
            if (i >= n) throw LexError("unterminated literal", begin);
            ++i;
            push(quote == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral, begin, i);
            continue;
        }
        bool matched = false;
        for (std::string_view op : kLongPuncts) {
            if (text.substr(i, op.size()) == op) {
                push(TokenKind::Punct, i, i + op.size());
                i += op.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (kSinglePuncts.find(c) != std::string_view::npos) {
            push(TokenKind::Punct, i, i + 1);
            ++i;
            continue;
        }
        throw LexError("illegal character '" + std::string(1, c) + "'", i);
    }

    tokens.push_back(Token{TokenKind::EndOfFile, text.substr(n, 0), Span{n, n}});
    return tokens;
}

}  // namespace xray
