#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "dx/core/symbol.hpp"

namespace dx {

enum class TermKind : std::uint8_t { Constant, OpenNull, ClosedNull, Variable };

class Term {
 public:
  constexpr Term() = default;

  static Term constant(std::string_view name) { return Term(TermKind::Constant, intern(name)); }
  static Term variable(std::string_view name) { return Term(TermKind::Variable, intern(name)); }
  static constexpr Term open_null(std::uint32_t id) { return Term(TermKind::OpenNull, id); }
  static constexpr Term closed_null(std::uint32_t id) { return Term(TermKind::ClosedNull, id); }
  static constexpr Term from_parts(TermKind kind, std::uint32_t id) { return Term(kind, id); }

  constexpr TermKind kind() const { return kind_; }
  constexpr std::uint32_t id() const { return id_; }

  constexpr bool is_constant() const { return kind_ == TermKind::Constant; }
  constexpr bool is_variable() const { return kind_ == TermKind::Variable; }
  constexpr bool is_open_null() const { return kind_ == TermKind::OpenNull; }
  constexpr bool is_closed_null() const { return kind_ == TermKind::ClosedNull; }
  constexpr bool is_null() const { return is_open_null() || is_closed_null(); }

  // Symbol name for constants and variables.
  const std::string& name() const { return symbol_name(id_); }

  // Plain rendering: constants and variables by name, nulls as ?o<k> / ?c<k>.
  std::string str() const;

  constexpr auto operator<=>(const Term&) const = default;

 private:
  constexpr Term(TermKind kind, std::uint32_t id) : kind_(kind), id_(id) {}

  TermKind kind_ = TermKind::Constant;
  std::uint32_t id_ = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{static_cast<std::uint8_t>(t.kind())} << 32) | t.id());
  }
};

}  // namespace dx
