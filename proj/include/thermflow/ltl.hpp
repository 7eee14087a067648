// Linear temporal logic over named state propositions, decided on a lasso:
// a finite path whose last state loops to itself.
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace thermflow {

struct Formula {
  enum class Op { top, bottom, prop, negation, conjunction, disjunction, implication, always, eventually, until };

  Op op;
  std::string prop;
  std::vector<std::shared_ptr<const Formula>> args;
};

using FormulaPtr = std::shared_ptr<const Formula>;

/// Syntax: True False <prop> ~f f /\ g f \/ g f -> g [] f <> f f U g, with
/// the usual aliases (! not && and || or true false). Unary operators bind
/// tightest, then U, /\, \/ and finally -> (right associative).
/// Throws ParseError for syntax errors or proposition names not in `props`.
FormulaPtr parse_formula(std::string_view text, const std::set<std::string, std::less<>>& props);

std::string to_string(const Formula& f);

/// Truth of each proposition at each path position.
using Labelling = std::map<std::string, std::vector<bool>, std::less<>>;

/// Decides `f` at position 0 of the lasso of `length` states whose final
/// state carries a self-loop. `length` must be at least 1.
bool holds_on_lasso(const Formula& f, const Labelling& labels, std::size_t length);

/// Per-position truth values of `f` on the same lasso.
std::vector<bool> evaluate_on_lasso(const Formula& f, const Labelling& labels, std::size_t length);

}  // namespace thermflow
