#pragma once

// One tokenizer for all the text formats (.space, .rel, .spec, .prog).
// Keywords are plain identifiers here; each parser decides which ones it
// treats as reserved. Line comments start with '//' or '#'.

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "relcheck/errors.hpp"

namespace relcheck {

enum class Tok {
    Ident,
    PrimedIdent, // name' (no space before the quote)
    Int,         // non-negative; '-' is always a separate token
    LParen, RParen, LBrace, RBrace,
    Comma, Semi, Colon,
    DotDot, Arrow,
    Assign,                        // =
    Eq, Ne, Le, Ge, Lt, Gt,        // == != <= >= < >
    Plus, Minus, Star, Slash, Percent,
    AndAnd, OrOr, Not,
    End,
};

struct Token {
    Tok kind;
    std::string text;    // identifier name (without the quote for PrimedIdent)
    long long value = 0; // for Int
    int line = 1;
    int col = 1;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = src.size();
    auto peek = [&](std::size_t k) -> char { return i + k < n ? src[i + k] : '\0'; };
    auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, line, col); };
    auto push = [&](Tok k, std::size_t len, int l, int c) {
        out.push_back({k, src.substr(i, len), 0, l, c});
        i += len;
        col += static_cast<int>(len);
    };
    while (i < n) {
        char ch = src[i];
        if (ch == '\n') { ++i; ++line; col = 1; continue; }
        if (ch == ' ' || ch == '\t' || ch == '\r') { ++i; ++col; continue; }
        if (ch == '#' || (ch == '/' && peek(1) == '/')) {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        int l = line, c = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            Token t{Tok::Int, src.substr(i, j - i), 0, l, c};
            try {
                t.value = std::stoll(t.text);
            } catch (const std::out_of_range&) {
                fail("integer literal too large: " + t.text);
            }
            out.push_back(t);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            std::string name = src.substr(i, j - i);
            bool primed = j < n && src[j] == '\'';
            out.push_back({primed ? Tok::PrimedIdent : Tok::Ident, name, 0, l, c});
            col += static_cast<int>(j - i + (primed ? 1 : 0));
            i = j + (primed ? 1 : 0);
            continue;
        }
        switch (ch) {
        case '(': push(Tok::LParen, 1, l, c); break;
        case ')': push(Tok::RParen, 1, l, c); break;
        case '{': push(Tok::LBrace, 1, l, c); break;
        case '}': push(Tok::RBrace, 1, l, c); break;
        case ',': push(Tok::Comma, 1, l, c); break;
        case ';': push(Tok::Semi, 1, l, c); break;
        case ':': push(Tok::Colon, 1, l, c); break;
        case '.':
            if (peek(1) == '.') push(Tok::DotDot, 2, l, c);
            else fail("stray '.'");
            break;
        case '-':
            if (peek(1) == '>') push(Tok::Arrow, 2, l, c);
            else push(Tok::Minus, 1, l, c);
            break;
        case '=':
            if (peek(1) == '=') push(Tok::Eq, 2, l, c);
            else push(Tok::Assign, 1, l, c);
            break;
        case '!':
            if (peek(1) == '=') push(Tok::Ne, 2, l, c);
            else push(Tok::Not, 1, l, c);
            break;
        case '<':
            if (peek(1) == '=') push(Tok::Le, 2, l, c);
            else push(Tok::Lt, 1, l, c);
            break;
        case '>':
            if (peek(1) == '=') push(Tok::Ge, 2, l, c);
            else push(Tok::Gt, 1, l, c);
            break;
        case '+': push(Tok::Plus, 1, l, c); break;
        case '*': push(Tok::Star, 1, l, c); break;
        case '/': push(Tok::Slash, 1, l, c); break;
        case '%': push(Tok::Percent, 1, l, c); break;
        case '&':
            if (peek(1) == '&') push(Tok::AndAnd, 2, l, c);
            else fail("stray '&' (did you mean '&&'?)");
            break;
        case '|':
            if (peek(1) == '|') push(Tok::OrOr, 2, l, c);
            else fail("stray '|' (did you mean '||'?)");
            break;
        default:
            fail(std::string("unexpected character '") + ch + "'");
        }
    }
    out.push_back({Tok::End, "", 0, line, col});
    return out;
}

// Token cursor shared by the recursive-descent parsers.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = pos_ + ahead;
        return k < toks_.size() ? toks_[k] : toks_.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.kind != Tok::End) ++pos_;
        return t;
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(const char* word) const {
        return peek().kind == Tok::Ident && peek().text == word;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos_;
        return true;
    }
    bool accept_ident(const char* word) {
        if (!at_ident(word)) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (!at(k)) fail("expected " + what);
        return toks_[pos_++];
    }
    void expect_ident(const char* word) {
        if (!accept_ident(word)) fail(std::string("expected '") + word + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        if (t.kind != Tok::End && t.text.empty()) got = "symbol";
        throw ParseError(msg + " (got " + got + ")", t.line, t.col);
    }

    // Checkpointing for the one grammar spot that needs backtracking
    // (parenthesized boolean vs. parenthesized arithmetic expression).
    std::size_t mark() const { return pos_; }
    void rewind(std::size_t m) { pos_ = m; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace relcheck
