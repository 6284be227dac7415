#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dx/core/errors.hpp"

namespace dx {

enum class Tok {
  Ident,
  Quoted,
  Null,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  At,
  Arrow,
  BiArrow,
  Turnstile,
  Eq,
  Neq,
  Bar,
  Amp,
  Bang,
  Semi,
  Colon,
  End
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

// Tokenizes the shared DSL alphabet; `%` starts a comment running to end of line.
std::vector<Token> tokenize(std::string_view text);

// Cursor over a token vector with error reporting at the current position.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }
  const Token& next();
  bool accept(Tok kind);
  const Token& expect(Tok kind, std::string_view what);
  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_plain_identifier(std::string_view s);
bool is_integer(std::string_view s);

}  // namespace dx
