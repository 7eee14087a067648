#include "thermflow/predicate.hpp"

#include <variant>

#include "fraction.hpp"
#include "lexer.hpp"

namespace thermflow {

namespace {

using detail::Tok;
using detail::TokenStream;

enum class Type { number, boolean };

struct Typed {
  ExprPtr expr;
  Type type;
};

ExprPtr make(Expr::Op op, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  Parser(TokenStream ts, const Configuration& objects) : ts_(std::move(ts)), objects_(objects) {}

  ExprPtr parse() {
    Typed t = parse_or();
    if (!ts_.at_end()) ts_.fail("unexpected trailing input");
    if (t.type != Type::boolean) ts_.fail("predicate must be boolean, got an arithmetic expression");
    return t.expr;
  }

 private:
  Typed parse_or() {
    Typed lhs = parse_and();
    while (ts_.accept("or") || ts_.accept("||")) {
      Typed rhs = parse_and();
      require(lhs, Type::boolean, "or");
      require(rhs, Type::boolean, "or");
      lhs = {make(Expr::Op::logicalOr, {lhs.expr, rhs.expr}), Type::boolean};
    }
    return lhs;
  }

  Typed parse_and() {
    Typed lhs = parse_not();
    while (ts_.accept("and") || ts_.accept("&&")) {
      Typed rhs = parse_not();
      require(lhs, Type::boolean, "and");
      require(rhs, Type::boolean, "and");
      lhs = {make(Expr::Op::logicalAnd, {lhs.expr, rhs.expr}), Type::boolean};
    }
    return lhs;
  }

  Typed parse_not() {
    if (ts_.accept("not") || ts_.accept("!")) {
      Typed inner = parse_not();
      require(inner, Type::boolean, "not");
      return {make(Expr::Op::logicalNot, {inner.expr}), Type::boolean};
    }
    return parse_cmp();
  }

  Typed parse_cmp() {
    Typed lhs = parse_sum();
    static constexpr std::pair<std::string_view, Expr::Op> kCmp[] = {
        {"<=", Expr::Op::le}, {">=", Expr::Op::ge}, {"!=", Expr::Op::ne},
        {"=", Expr::Op::eq},  {"<", Expr::Op::lt},  {">", Expr::Op::gt},
    };
    for (const auto& [text, op] : kCmp) {
      if (ts_.accept(text)) {
        Typed rhs = parse_sum();
        require(lhs, Type::number, text);
        require(rhs, Type::number, text);
        return {make(op, {lhs.expr, rhs.expr}), Type::boolean};
      }
    }
    return lhs;
  }

  Typed parse_sum() {
    Typed lhs = parse_prod();
    for (;;) {
      Expr::Op op;
      if (ts_.accept("+"))
        op = Expr::Op::add;
      else if (ts_.accept("-"))
        op = Expr::Op::sub;
      else
        return lhs;
      Typed rhs = parse_prod();
      require(lhs, Type::number, "arithmetic");
      require(rhs, Type::number, "arithmetic");
      lhs = {make(op, {lhs.expr, rhs.expr}), Type::number};
    }
  }

  Typed parse_prod() {
    Typed lhs = parse_unary();
    for (;;) {
      Expr::Op op;
      if (ts_.accept("*"))
        op = Expr::Op::mul;
      else if (ts_.accept("/"))
        op = Expr::Op::div;
      else
        return lhs;
      Typed rhs = parse_unary();
      require(lhs, Type::number, "arithmetic");
      require(rhs, Type::number, "arithmetic");
      lhs = {make(op, {lhs.expr, rhs.expr}), Type::number};
    }
  }

  Typed parse_unary() {
    if (ts_.accept("-")) {
      Typed inner = parse_unary();
      require(inner, Type::number, "negation");
      return {make(Expr::Op::neg, {inner.expr}), Type::number};
    }
    const auto& t = ts_.peek();
    if (t.kind == Tok::number) {
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::number;
      e->value = Rational::parse(t.text);
      ts_.next();
      return {e, Type::number};
    }
    if (ts_.accept("(")) {
      Typed inner = parse_or();
      ts_.expect(")");
      return inner;
    }
    if (t.kind != Tok::ident) ts_.fail("expected an expression");

    std::string name = t.text;
    if (name == "true" || name == "false") {
      ts_.next();
      auto e = std::make_shared<Expr>();
      e->op = Expr::Op::boolean;
      e->flag = name == "true";
      return {e, Type::boolean};
    }
    if (name == "abs") {
      ts_.next();
      ts_.expect("(");
      Typed inner = parse_sum();
      require(inner, Type::number, "abs");
      ts_.expect(")");
      return {make(Expr::Op::abs, {inner.expr}), Type::number};
    }
    if (name == "temp" || name == "heatTrans") return attribute(name == "temp" ? Expr::Op::temp : Expr::Op::heatTrans);
    if (name == "qdot") return attribute(Expr::Op::qdot);
    if (name == "phaseIs") return phase_is();
    if (name == "statusIs") return status_is();
    ts_.fail("unknown function '" + name + "'");
  }

  Typed attribute(Expr::Op op) {
    ts_.next();
    ts_.expect("(");
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->id = object(op == Expr::Op::qdot ? Role::flow : Role::entity);
    ts_.expect(")");
    return {e, Type::number};
  }

  Typed phase_is() {
    ts_.next();
    ts_.expect("(");
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::phaseIs;
    e->id = object(Role::water);
    ts_.expect(",");
    if (ts_.peek().kind != Tok::ident) ts_.fail("expected a phase name");
    auto p = parse_phase(ts_.peek().text);
    if (!p) ts_.fail("unknown phase");
    e->phase = *p;
    ts_.next();
    ts_.expect(")");
    return {e, Type::boolean};
  }

  Typed status_is() {
    ts_.next();
    ts_.expect("(");
    auto e = std::make_shared<Expr>();
    e->op = Expr::Op::statusIs;
    e->id = object(Role::smartHeater);
    ts_.expect(",");
    if (ts_.peek().kind != Tok::ident) ts_.fail("expected on or off");
    auto s = parse_status(ts_.peek().text);
    if (!s) ts_.fail("expected on or off");
    e->status = *s;
    ts_.next();
    ts_.expect(")");
    return {e, Type::boolean};
  }

  enum class Role { entity, water, flow, smartHeater };

  ObjectId object(Role role) {
    if (ts_.peek().kind != Tok::ident) ts_.fail("expected an object id");
    ObjectId id = ts_.peek().text;
    const Object* o = objects_.find(id);
    if (!o) ts_.fail("unknown object '" + id + "'");
    bool ok = false;
    switch (role) {
      case Role::entity: ok = std::holds_alternative<ThermalEntity>(*o); break;
      case Role::water: {
        const auto* e = std::get_if<ThermalEntity>(o);
        ok = e && e->kind == EntityKind::water;
        break;
      }
      case Role::flow: ok = !std::holds_alternative<ThermalEntity>(*o); break;
      case Role::smartHeater: {
        const auto* g = std::get_if<HeatGenerator>(o);
        ok = g && g->smart.has_value();
        break;
      }
    }
    if (!ok) ts_.fail("object '" + id + "' has no such attribute");
    ts_.next();
    return id;
  }

  void require(const Typed& t, Type want, std::string_view context) {
    if (t.type != want)
      ts_.fail(std::string(want == Type::number ? "numeric" : "boolean") + " operand expected for " +
               std::string(context));
  }

  TokenStream ts_;
  const Configuration& objects_;
};

using detail::Fraction;
using Value = std::variant<Fraction, bool>;

const Fraction& num(const Value& v) { return std::get<Fraction>(v); }
bool truth(const Value& v) { return std::get<bool>(v); }

Value eval(const Expr& e, const Configuration& c) {
  using Op = Expr::Op;
  auto arg = [&](std::size_t i) { return eval(*e.args[i], c); };
  auto entity = [&]() -> const ThermalEntity& {
    const auto* p = get_entity(c, e.id);
    if (!p) throw Error("predicate refers to missing entity '" + e.id + "'");
    return *p;
  };
  switch (e.op) {
    case Op::number: return Fraction(e.value);
    case Op::boolean: return e.flag;
    case Op::temp: return Fraction(entity().temp);
    case Op::heatTrans: return Fraction(entity().heatTrans);
    case Op::phaseIs: return entity().phase == e.phase;
    case Op::qdot: {
      const Object* o = c.find(e.id);
      if (const auto* i = o ? std::get_if<ThermalInteraction>(o) : nullptr) return Fraction(i->qdot);
      if (const auto* g = o ? std::get_if<HeatGenerator>(o) : nullptr) return Fraction(g->qdot);
      throw Error("predicate refers to missing flow object '" + e.id + "'");
    }
    case Op::statusIs: {
      const auto* g = get_heater(c, e.id);
      if (!g || !g->smart) throw Error("predicate refers to missing smart heater '" + e.id + "'");
      return g->smart->status == e.status;
    }
    case Op::add: return Fraction(num(arg(0))) += num(arg(1));
    case Op::sub: return Fraction(num(arg(0))) -= num(arg(1));
    case Op::mul: return Fraction(num(arg(0))) *= num(arg(1));
    case Op::div: return Fraction(num(arg(0))) /= num(arg(1));
    case Op::neg: return -num(arg(0));
    case Op::abs: return abs(num(arg(0)));
    case Op::eq: return compare(num(arg(0)), num(arg(1))) == 0;
    case Op::ne: return compare(num(arg(0)), num(arg(1))) != 0;
    case Op::lt: return compare(num(arg(0)), num(arg(1))) < 0;
    case Op::le: return compare(num(arg(0)), num(arg(1))) <= 0;
    case Op::gt: return compare(num(arg(0)), num(arg(1))) > 0;
    case Op::ge: return compare(num(arg(0)), num(arg(1))) >= 0;
    case Op::logicalAnd: return truth(arg(0)) && truth(arg(1));
    case Op::logicalOr: return truth(arg(0)) || truth(arg(1));
    case Op::logicalNot: return !truth(arg(0));
  }
  throw Error("corrupt predicate");
}

}  // namespace

bool Predicate::evaluate(const Configuration& c) const {
  if (!root_) throw Error("empty predicate");
  try {
    return truth(eval(*root_, c));
  } catch (const std::domain_error& ex) {
    throw Error("predicate '" + source_ + "': " + ex.what());
  }
}

Predicate parse_predicate(std::string_view text, const Configuration& objects, int line, int column) {
  auto toks = detail::tokenize(
      text, {"(", ")", ",", "+", "-", "*", "/", "<=", ">=", "!=", "=", "<", ">", "&&", "||", "!"},
      line, column);
  Parser p(TokenStream(std::move(toks)), objects);
  ExprPtr root = p.parse();
  return Predicate(std::move(root), std::string(text));
}

}  // namespace thermflow
