#include "thermflow/ltl.hpp"

#include "lexer.hpp"

namespace thermflow {

namespace {

using detail::Tok;
using detail::TokenStream;

FormulaPtr node(Formula::Op op, std::vector<FormulaPtr> args = {}, std::string prop = {}) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->args = std::move(args);
  f->prop = std::move(prop);
  return f;
}

class Parser {
 public:
  Parser(TokenStream ts, const std::set<std::string, std::less<>>& props)
      : ts_(std::move(ts)), props_(props) {}

  FormulaPtr parse() {
    FormulaPtr f = implication();
    if (!ts_.at_end()) ts_.fail("unexpected trailing input");
    return f;
  }

 private:
  FormulaPtr implication() {
    FormulaPtr lhs = disjunction();
    if (ts_.accept("->")) return node(Formula::Op::implication, {lhs, implication()});
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr lhs = conjunction();
    while (ts_.accept("\\/") || ts_.accept("||") || ts_.accept("or"))
      lhs = node(Formula::Op::disjunction, {lhs, conjunction()});
    return lhs;
  }

  FormulaPtr conjunction() {
    FormulaPtr lhs = until();
    while (ts_.accept("/\\") || ts_.accept("&&") || ts_.accept("and"))
      lhs = node(Formula::Op::conjunction, {lhs, until()});
    return lhs;
  }

  FormulaPtr until() {
    FormulaPtr lhs = unary();
    if (ts_.accept("U")) return node(Formula::Op::until, {lhs, until()});
    return lhs;
  }

  FormulaPtr unary() {
    if (ts_.accept("~") || ts_.accept("!") || ts_.accept("not"))
      return node(Formula::Op::negation, {unary()});
    if (ts_.accept("[]")) return node(Formula::Op::always, {unary()});
    if (ts_.accept("<>")) return node(Formula::Op::eventually, {unary()});
    if (ts_.accept("(")) {
      FormulaPtr f = implication();
      ts_.expect(")");
      return f;
    }
    const auto& t = ts_.peek();
    if (t.kind != Tok::ident) ts_.fail("expected a formula");
    if (t.text == "True" || t.text == "true") {
      ts_.next();
      return node(Formula::Op::top);
    }
    if (t.text == "False" || t.text == "false") {
      ts_.next();
      return node(Formula::Op::bottom);
    }
    if (t.text == "U") ts_.fail("'U' needs a left operand");
    if (props_.find(t.text) == props_.end()) ts_.fail("unbound proposition '" + t.text + "'");
    std::string name = t.text;
    ts_.next();
    return node(Formula::Op::prop, {}, std::move(name));
  }

  TokenStream ts_;
  const std::set<std::string, std::less<>>& props_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text, const std::set<std::string, std::less<>>& props) {
  auto toks = detail::tokenize(text, {"(", ")", "[]", "<>", "->", "/\\", "\\/", "~", "!", "&&", "||"});
  return Parser(TokenStream(std::move(toks)), props).parse();
}

std::string to_string(const Formula& f) {
  using Op = Formula::Op;
  auto a = [&](std::size_t i) { return to_string(*f.args[i]); };
  switch (f.op) {
    case Op::top: return "True";
    case Op::bottom: return "False";
    case Op::prop: return f.prop;
    case Op::negation: return "~ " + a(0);
    case Op::conjunction: return "(" + a(0) + " /\\ " + a(1) + ")";
    case Op::disjunction: return "(" + a(0) + " \\/ " + a(1) + ")";
    case Op::implication: return "(" + a(0) + " -> " + a(1) + ")";
    case Op::always: return "[] " + a(0);
    case Op::eventually: return "<> " + a(0);
    case Op::until: return "(" + a(0) + " U " + a(1) + ")";
  }
  return "?";
}

std::vector<bool> evaluate_on_lasso(const Formula& f, const Labelling& labels, std::size_t n) {
  using Op = Formula::Op;
  std::vector<bool> out(n);
  switch (f.op) {
    case Op::top: out.assign(n, true); break;
    case Op::bottom: out.assign(n, false); break;
    case Op::prop: {
      auto it = labels.find(f.prop);
      if (it == labels.end() || it->second.size() < n)
        throw Error("no labelling for proposition '" + f.prop + "'");
      out.assign(it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(n));
      break;
    }
    case Op::negation: {
      auto a = evaluate_on_lasso(*f.args[0], labels, n);
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
      break;
    }
    case Op::conjunction:
    case Op::disjunction:
    case Op::implication: {
      auto a = evaluate_on_lasso(*f.args[0], labels, n);
      auto b = evaluate_on_lasso(*f.args[1], labels, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (f.op == Op::conjunction) out[i] = a[i] && b[i];
        else if (f.op == Op::disjunction) out[i] = a[i] || b[i];
        else out[i] = !a[i] || b[i];
      }
      break;
    }
    // The suffix from the last state is that state repeated forever, so each
    // temporal operator is settled there and propagated backwards.
    case Op::always: {
      auto a = evaluate_on_lasso(*f.args[0], labels, n);
      bool acc = true;
      for (std::size_t i = n; i-- > 0;) out[i] = acc = acc && a[i];
      break;
    }
    case Op::eventually: {
      auto a = evaluate_on_lasso(*f.args[0], labels, n);
      bool acc = false;
      for (std::size_t i = n; i-- > 0;) out[i] = acc = acc || a[i];
      break;
    }
    case Op::until: {
      auto a = evaluate_on_lasso(*f.args[0], labels, n);
      auto b = evaluate_on_lasso(*f.args[1], labels, n);
      bool acc = false;
      for (std::size_t i = n; i-- > 0;) out[i] = acc = b[i] || (a[i] && acc);
      break;
    }
  }
  return out;
}

bool holds_on_lasso(const Formula& f, const Labelling& labels, std::size_t length) {
  if (length == 0) throw Error("lasso must contain at least one state");
  return evaluate_on_lasso(f, labels, length).front();
}

}  // namespace thermflow
