#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cam::detail {

enum class Tok {
    Ident, Int,
    KwFn, KwLet, KwIf, KwElse, KwWhile, KwFor, KwReturn, KwTrue, KwFalse,
    KwAssertEq, KwAssertTrue,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Semicolon,
    Assign,
    EqEq, BangEq, Lt, Le, Gt, Ge,
    Plus, Minus, Star, Slash, Percent,
    AmpAmp, PipePipe, Bang,
    Amp, Pipe, Caret,
    PlusPlus, MinusMinus,
    Eof,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    std::uint64_t int_value = 0;  // Tok::Int: unsigned digits; sign applied by the parser
    int line = 0;
    int column = 0;
};

const char* token_name(Tok kind);

/// Tokenizes source text. Whitespace separates tokens; // starts a comment
/// running to end of line. Throws SyntaxError on stray characters or
/// overlong integer literals.
std::vector<Token> lex(const std::string& source, const std::string& file);

} // namespace cam::detail
