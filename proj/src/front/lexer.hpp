#pragma once

#include <string>
#include <vector>

#include "regabs/front/parse.hpp"

namespace regabs::front {

enum class Tok {
    Ident, Number, Designated,
    LParen, RParen, LBracket, RBracket,
    Bar,            // |
    Amp, Bang, Arrow /* => */, Iff /* <=> */,
    Rel,            // = != <= < >= >
    Plus, Minus, Star, Comma, Semi, Colon, Dot, Assign /* := */, Guard /* |> */,
    Newline, End,
};

struct Token {
    Tok kind;
    std::string text;
    long long number = 0;
    int line = 1, col = 1;
    bool glued_left = false;   // no whitespace before this token
    bool glued_right = false;  // no whitespace after this token
};

// Produces a token stream; '#' starts a comment to end of line. Newlines are
// tokens (the grammar is line-oriented).
std::vector<Token> lex(const std::string& text);

}  // namespace regabs::front
