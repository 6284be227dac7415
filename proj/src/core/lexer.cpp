#include "dx/core/lexer.hpp"

#include <cctype>

namespace dx {
namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), line, col});
    advance(len);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') throw ParseError(line, col, "unterminated string");
      out.push_back({Tok::Quoted, std::string(text.substr(i + 1, j - i - 1)), line, col});
      advance(j - i + 1);
    } else if (c == '?' && i + 1 < text.size() && (text[i + 1] == 'o' || text[i + 1] == 'c')) {
      std::size_t j = i + 2;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 2) throw ParseError(line, col, "malformed null");
      push(Tok::Null, j - i);
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(Tok::Ident, j - i);
    } else if (text.substr(i, 3) == "<->") {
      push(Tok::BiArrow, 3);
    } else if (text.substr(i, 2) == "->") {
      push(Tok::Arrow, 2);
    } else if (text.substr(i, 2) == ":-") {
      push(Tok::Turnstile, 2);
    } else if (text.substr(i, 2) == "!=") {
      push(Tok::Neq, 2);
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ',': kind = Tok::Comma; break;
        case '.': kind = Tok::Dot; break;
        case '@': kind = Tok::At; break;
        case '=': kind = Tok::Eq; break;
        case '|': kind = Tok::Bar; break;
        case '&': kind = Tok::Amp; break;
        case '!': kind = Tok::Bang; break;
        case ';': kind = Tok::Semi; break;
        case ':': kind = Tok::Colon; break;
        default:
          throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      push(kind, 1);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& TokenStream::next() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::accept(Tok kind) {
  if (!at(kind)) return false;
  next();
  return true;
}

const Token& TokenStream::expect(Tok kind, std::string_view what) {
  if (!at(kind)) fail("expected " + std::string(what));
  return next();
}

void TokenStream::fail(const std::string& message) const {
  const Token& t = peek();
  throw ParseError(t.line, t.column, message + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"));
}

bool is_plain_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace dx
