// State predicates over object attributes, evaluated exactly.
//
// Grammar (lowest precedence first):
//   or   := and ("or" | "||") and ...
//   and  := not ("and" | "&&") not ...
//   not  := ("not" | "!") not | cmp
//   cmp  := sum [("=" | "!=" | "<" | "<=" | ">" | ">=") sum]
//   sum  := prod (("+" | "-") prod)...
//   prod := unary (("*" | "/") unary)...
//   unary:= "-" unary | number | "true" | "false" | "(" or ")"
//          | temp(id) | qdot(id) | heatTrans(id) | abs(sum)
//          | phaseIs(id, phase) | statusIs(id, on|off)
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "thermflow/model.hpp"

namespace thermflow {

struct Expr {
  enum class Op {
    number, boolean,
    temp, qdot, heatTrans, phaseIs, statusIs,
    add, sub, mul, div, neg, abs,
    eq, ne, lt, le, gt, ge,
    logicalAnd, logicalOr, logicalNot,
  };

  Op op;
  Rational value;
  bool flag = false;
  ObjectId id;
  Phase phase = Phase::solid;
  HeaterStatus status = HeaterStatus::off;
  std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

class Predicate {
 public:
  Predicate() = default;
  Predicate(ExprPtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

  /// Throws Error when a referenced object is missing or a division by zero
  /// occurs.
  bool evaluate(const Configuration& c) const;

  const std::string& source() const { return source_; }
  const Expr& root() const { return *root_; }

  /// Compares source text; two predicates parsed from the same text in the
  /// same scene are identical.
  bool operator==(const Predicate& o) const { return source_ == o.source_; }

 private:
  ExprPtr root_;
  std::string source_;
};

/// Parses and resolves every reference against `objects`. Throws ParseError
/// with positions offset by (line, column).
Predicate parse_predicate(std::string_view text, const Configuration& objects, int line = 1,
                          int column = 1);

}  // namespace thermflow
