#include "lexer.hpp"

#include <cctype>

namespace regabs::front {

static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    bool prev_ws = true;
    auto push = [&](Tok k, std::string t, long long n = 0) {
        Token tok{k, std::move(t), n, line, col, !prev_ws, false};
        out.push_back(std::move(tok));
    };
    auto err = [&](const std::string& m) { throw ParseError(m, line, col); };

    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            push(Tok::Newline, "\n");
            ++i;
            ++line;
            col = 1;
            prev_ws = true;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            prev_ws = true;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        size_t start = i;
        int startcol = col;
        auto advance = [&](size_t n) { i += n; col += static_cast<int>(n); };
        auto two = [&](const char* s) {
            return i + 1 < text.size() && text[i] == s[0] && text[i + 1] == s[1];
        };
        auto three = [&](const char* s) {
            return i + 2 < text.size() && text[i] == s[0] && text[i + 1] == s[1] &&
                   text[i + 2] == s[2];
        };

        if (ident_start(c)) {
            while (i < text.size() && ident_char(text[i])) advance(1);
            push(Tok::Ident, text.substr(start, i - start));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
            std::string num = text.substr(start, i - start);
            push(Tok::Number, num, std::stoll(num));
        } else if (c == '%') {
            advance(1);
            if (i >= text.size() || text[i] != 'i') err("expected %i");
            advance(1);
            push(Tok::Designated, "%i");
        } else if (three("<=>")) {
            advance(3);
            push(Tok::Iff, "<=>");
        } else if (two("=>")) {
            advance(2);
            push(Tok::Arrow, "=>");
        } else if (two(":=")) {
            advance(2);
            push(Tok::Assign, ":=");
        } else if (two("|>")) {
            advance(2);
            push(Tok::Guard, "|>");
        } else if (two("!=") || two("<=") || two(">=")) {
            std::string t = text.substr(i, 2);
            advance(2);
            push(Tok::Rel, t);
        } else {
            advance(1);
            switch (c) {
                case '(': push(Tok::LParen, "("); break;
                case ')': push(Tok::RParen, ")"); break;
                case '[': push(Tok::LBracket, "["); break;
                case ']': push(Tok::RBracket, "]"); break;
                case '|': push(Tok::Bar, "|"); break;
                case '&': push(Tok::Amp, "&"); break;
                case '!': push(Tok::Bang, "!"); break;
                case '=': push(Tok::Rel, "="); break;
                case '<': push(Tok::Rel, "<"); break;
                case '>': push(Tok::Rel, ">"); break;
                case '+': push(Tok::Plus, "+"); break;
                case '-': push(Tok::Minus, "-"); break;
                case '*': push(Tok::Star, "*"); break;
                case ',': push(Tok::Comma, ","); break;
                case ';': push(Tok::Semi, ";"); break;
                case ':': push(Tok::Colon, ":"); break;
                case '.': push(Tok::Dot, "."); break;
                default:
                    col = startcol;
                    err(std::string("unexpected character '") + c + "'");
            }
        }
        prev_ws = false;
        if (i < text.size()) {
            char nx = text[i];
            out.back().glued_right = !(nx == ' ' || nx == '\t' || nx == '\r' || nx == '\n');
        }
    }
    push(Tok::Newline, "\n");
    push(Tok::End, "");
    return out;
}

}  // namespace regabs::front
