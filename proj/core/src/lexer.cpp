#include "lexer.hpp"

#include <cctype>

#include "cam/errors.hpp"

namespace cam::detail {

namespace {

// Largest literal we can still negate into an int64: 2^63.
constexpr std::uint64_t k_max_literal = 9223372036854775808ULL;

Tok keyword_kind(const std::string& word) {
    if (word == "fn") return Tok::KwFn;
    if (word == "let") return Tok::KwLet;
    if (word == "if") return Tok::KwIf;
    if (word == "else") return Tok::KwElse;
    if (word == "while") return Tok::KwWhile;
    if (word == "for") return Tok::KwFor;
    if (word == "return") return Tok::KwReturn;
    if (word == "true") return Tok::KwTrue;
    if (word == "false") return Tok::KwFalse;
    if (word == "assert_eq") return Tok::KwAssertEq;
    if (word == "assert_true") return Tok::KwAssertTrue;
    return Tok::Ident;
}

} // namespace

const char* token_name(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer literal";
        case Tok::KwFn: return "'fn'";
        case Tok::KwLet: return "'let'";
        case Tok::KwIf: return "'if'";
        case Tok::KwElse: return "'else'";
        case Tok::KwWhile: return "'while'";
        case Tok::KwFor: return "'for'";
        case Tok::KwReturn: return "'return'";
        case Tok::KwTrue: return "'true'";
        case Tok::KwFalse: return "'false'";
        case Tok::KwAssertEq: return "'assert_eq'";
        case Tok::KwAssertTrue: return "'assert_true'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Semicolon: return "';'";
        case Tok::Assign: return "'='";
        case Tok::EqEq: return "'=='";
        case Tok::BangEq: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Percent: return "'%'";
        case Tok::AmpAmp: return "'&&'";
        case Tok::PipePipe: return "'||'";
        case Tok::Bang: return "'!'";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Caret: return "'^'";
        case Tok::PlusPlus: return "'++'";
        case Tok::MinusMinus: return "'--'";
        case Tok::Eof: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& source, const std::string& file) {
    std::vector<Token> tokens;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (source[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++pos;
        }
    };
    auto peek = [&](std::size_t offset = 0) -> char {
        return pos + offset < source.size() ? source[pos + offset] : '\0';
    };
    auto push = [&](Tok kind, std::string text, std::uint64_t value = 0) {
        tokens.push_back({kind, std::move(text), value, line, column});
    };

    while (pos < source.size()) {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && peek(1) == '/') {
            while (pos < source.size() && peek() != '\n') advance(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            int start_line = line, start_col = column;
            while (pos < source.size() &&
                   (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                advance(1);
            std::string word = source.substr(start, pos - start);
            tokens.push_back({keyword_kind(word), std::move(word), 0, start_line, start_col});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            int start_line = line, start_col = column;
            std::uint64_t value = 0;
            bool overflow = false;
            while (pos < source.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
                std::uint64_t digit = static_cast<std::uint64_t>(peek() - '0');
                if (value > (k_max_literal - digit) / 10) overflow = true;
                if (!overflow) value = value * 10 + digit;
                advance(1);
            }
            if (overflow || value > k_max_literal)
                throw SyntaxError(file, start_line, start_col, "integer literal out of range");
            tokens.push_back(
                {Tok::Int, source.substr(start, pos - start), value, start_line, start_col});
            continue;
        }

        auto two = [&](char second) { return peek(1) == second; };
        switch (c) {
            case '(': push(Tok::LParen, "("); advance(1); continue;
            case ')': push(Tok::RParen, ")"); advance(1); continue;
            case '{': push(Tok::LBrace, "{"); advance(1); continue;
            case '}': push(Tok::RBrace, "}"); advance(1); continue;
            case '[': push(Tok::LBracket, "["); advance(1); continue;
            case ']': push(Tok::RBracket, "]"); advance(1); continue;
            case ',': push(Tok::Comma, ","); advance(1); continue;
            case ';': push(Tok::Semicolon, ";"); advance(1); continue;
            case '=':
                if (two('=')) { push(Tok::EqEq, "=="); advance(2); }
                else { push(Tok::Assign, "="); advance(1); }
                continue;
            case '!':
                if (two('=')) { push(Tok::BangEq, "!="); advance(2); }
                else { push(Tok::Bang, "!"); advance(1); }
                continue;
            case '<':
                if (two('=')) { push(Tok::Le, "<="); advance(2); }
                else { push(Tok::Lt, "<"); advance(1); }
                continue;
            case '>':
                if (two('=')) { push(Tok::Ge, ">="); advance(2); }
                else { push(Tok::Gt, ">"); advance(1); }
                continue;
            case '+':
                if (two('+')) { push(Tok::PlusPlus, "++"); advance(2); }
                else { push(Tok::Plus, "+"); advance(1); }
                continue;
            case '-':
                if (two('-')) { push(Tok::MinusMinus, "--"); advance(2); }
                else { push(Tok::Minus, "-"); advance(1); }
                continue;
            case '*': push(Tok::Star, "*"); advance(1); continue;
            case '/': push(Tok::Slash, "/"); advance(1); continue;
            case '%': push(Tok::Percent, "%"); advance(1); continue;
            case '&':
                if (two('&')) { push(Tok::AmpAmp, "&&"); advance(2); }
                else { push(Tok::Amp, "&"); advance(1); }
                continue;
            case '|':
                if (two('|')) { push(Tok::PipePipe, "||"); advance(2); }
                else { push(Tok::Pipe, "|"); advance(1); }
                continue;
            case '^': push(Tok::Caret, "^"); advance(1); continue;
            default:
                throw SyntaxError(file, line, column,
                                  std::string("unexpected character '") + c + "'");
        }
    }
    tokens.push_back({Tok::Eof, "", 0, line, column});
    return tokens;
}

} // namespace cam::detail
