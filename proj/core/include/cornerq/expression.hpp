#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace cornerq {

/// A parsed formula in one variable.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-' unary | atom
///   atom   := number | 'pi' | variable | func '(' expr ')' | '(' expr ')'
///   func   := sin | cos | tan | exp | log | sqrt
///
/// The Unicode minus sign is accepted wherever '-' is.
class Expression {
 public:
  struct Node;

  /// Throws ParseError with the byte offset of the problem.
  static Expression parse(std::string_view text, std::string_view variable);

  double operator()(double x) const;
  /// Canonical text; parsing it gives back an equal tree.
  std::string print() const;

  const std::string& source() const { return source_; }
  const std::string& variable() const { return variable_; }
  bool operator==(const Expression& other) const;

 private:
  Expression(std::shared_ptr<const Node> root, std::string source, std::string variable);

  std::shared_ptr<const Node> root_;
  std::string source_;
  std::string variable_;
};

}  // namespace cornerq
