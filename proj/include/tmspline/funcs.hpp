#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tmspline/common.hpp"

namespace tmspline {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Immutable expression tree in the single variable x.
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | call | '(' expr ')'
///   call    := name '(' expr (',' expr)* ')'   name in exp abs sign min max sinh
class Expr {
 public:
  struct Node;

  /// Throws DomainError on division by zero or a non-finite result.
  double operator()(double x) const;
  /// Fully parenthesized text that parses back to the same tree.
  std::string print() const;

 private:
  friend Expr parse(std::string_view src);
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

Expr parse(std::string_view src);

struct Builtin {
  std::string name;
  RealFunction f;
  bool three_monotone_on_unit = true;  // false for negative controls
};

/// exp, x2sign, xplus3, sinh, quartic and the negative control negcube.
const std::vector<Builtin>& builtins();

/// A builtin name, "cubic(c3,c2,c1,c0)" or an expression in x.
/// Throws ParseError for malformed input.
RealFunction resolve_function(std::string_view spec);

/// Help text for the expression syntax.
const char* expression_syntax();

}  // namespace tmspline
