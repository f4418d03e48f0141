#include "biharm/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace biharm {

enum class Op { Const, Var0, Var1, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Fn { Exp, Log, Sin, Cos, Tan, Sqrt, Abs, Sinh, Cosh };

struct Expression::Node {
  Op op = Op::Const;
  double value = 0.0;
  Fn fn = Fn::Exp;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr constant(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->value = v;
  return n;
}

struct FnName {
  const char* name;
  Fn fn;
};
constexpr FnName kFunctions[] = {{"exp", Fn::Exp},   {"log", Fn::Log},   {"sin", Fn::Sin},
                                 {"cos", Fn::Cos},   {"tan", Fn::Tan},   {"sqrt", Fn::Sqrt},
                                 {"abs", Fn::Abs},   {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh}};

class Parser {
 public:
  Parser(const std::string& s, std::string v0, std::string v1) : s_(s), v0_(std::move(v0)), v1_(std::move(v1)) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr n = term();
    while (true) {
      if (eat('+')) n = make(Op::Add, n, term());
      else if (eat('-')) n = make(Op::Sub, n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    while (true) {
      if (eat('*')) n = make(Op::Mul, n, unary());
      else if (eat('/')) n = make(Op::Div, n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  // -x^2 is -(x^2); 2^-1 is allowed
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Op::Pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (res.ec != std::errc()) fail("bad number");
    pos_ = static_cast<size_t>(res.ptr - s_.data());
    return constant(v);
  }

  NodePtr name() {
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    if (id == v0_) return make(Op::Var0);
    if (id == v1_) return make(Op::Var1);
    if (id == "pi") return constant(std::numbers::pi);
    if (id == "e") return constant(std::numbers::e);
    for (const auto& f : kFunctions) {
      if (id == f.name) {
        if (!eat('(')) fail("expected '(' after " + id);
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::Call;
        n->fn = f.fn;
        n->a = std::move(arg);
        return n;
      }
    }
    pos_ = start;
    fail("unknown name '" + id + "' (variables are " + v0_ + ", " + v1_ + ")");
  }

  const std::string& s_;
  std::string v0_, v1_;
  size_t pos_ = 0;
};

RealJet call(Fn f, const RealJet& x) {
  switch (f) {
    case Fn::Exp:
      return exp(x);
    case Fn::Log:
      return log(x);
    case Fn::Sin:
      return sin(x);
    case Fn::Cos:
      return cos(x);
    case Fn::Tan:
      return tan(x);
    case Fn::Sqrt:
      return sqrt(x);
    case Fn::Abs:
      return abs(x);
    case Fn::Sinh:
      return sinh(x);
    case Fn::Cosh:
      return cosh(x);
  }
  return x;
}

RealJet eval(const Expression::Node& n, const RealJet& a, const RealJet& b) {
  switch (n.op) {
    case Op::Const:
      return RealJet::constant(n.value, a.order());
    case Op::Var0:
      return a;
    case Op::Var1:
      return b;
    case Op::Neg:
      return -eval(*n.a, a, b);
    case Op::Add:
      return eval(*n.a, a, b) + eval(*n.b, a, b);
    case Op::Sub:
      return eval(*n.a, a, b) - eval(*n.b, a, b);
    case Op::Mul:
      return eval(*n.a, a, b) * eval(*n.b, a, b);
    case Op::Div:
      return eval(*n.a, a, b) / eval(*n.b, a, b);
    case Op::Pow: {
      const RealJet base = eval(*n.a, a, b);
      // constant exponents keep negative bases usable for integer powers
      if (n.b->op == Op::Const) return pow(base, n.b->value);
      if (n.b->op == Op::Neg && n.b->a->op == Op::Const) return pow(base, -n.b->a->value);
      return exp(eval(*n.b, a, b) * log(base));
    }
    case Op::Call:
      return call(n.fn, eval(*n.a, a, b));
  }
  return a;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t k = s.find(sep, start);
    out.push_back(s.substr(start, k == std::string::npos ? std::string::npos : k - start));
    if (k == std::string::npos) return out;
    start = k + 1;
  }
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

}  // namespace

Expression Expression::parse(const std::string& src, const std::string& var0, const std::string& var1) {
  return Expression(Parser(src, var0, var1).parse(), src);
}

RealJet Expression::operator()(const RealJet& a, const RealJet& b) const { return eval(*root_, a, b); }

double Expression::operator()(double a, double b) const {
  return eval(*root_, RealJet::constant(a, 0), RealJet::constant(b, 0)).value();
}

ScalarField2 Expression::field() const {
  const Expression self = *this;
  return ScalarField2::analytic([self](const RealJet& a, const RealJet& b) { return self(a, b); });
}

SmoothMap2 parse_map(const std::string& spec) {
  const auto parts = split(spec, ';');
  if (parts.size() != 2) throw ParseError("map spec needs two components separated by ';': \"" + spec + "\"");
  const Expression f = Expression::parse(trim(parts[0])), g = Expression::parse(trim(parts[1]));
  return SmoothMap2::analytic([f](const RealJet& x, const RealJet& y) { return f(x, y); },
                              [g](const RealJet& x, const RealJet& y) { return g(x, y); });
}

Metric2 parse_metric(const std::string& spec, bool target, Rect domain) {
  const std::string v0 = target ? "u" : "x", v1 = target ? "v" : "y";
  const std::string s = trim(spec);
  if (s == "flat") return Metric2::conformal(ScalarField2::constant(1.0), domain);
  if (s == "sphere") return Metric2::conformal(Expression::parse("2/(1+" + v0 + "^2+" + v1 + "^2)", v0, v1).field(), domain);
  if (s == "hyperbolic") {
    return Metric2::general(Expression::parse("exp(-2*" + v1 + ")", v0, v1).field(), ScalarField2::constant(0.0),
                            ScalarField2::constant(1.0), domain);
  }
  const size_t colon = s.find(':');
  if (colon == std::string::npos) throw ParseError("unknown metric \"" + spec + "\"");
  const std::string kind = s.substr(0, colon), body = s.substr(colon + 1);
  if (kind == "conformal") return Metric2::conformal(Expression::parse(trim(body), v0, v1).field(), domain);
  if (kind == "warped") return Metric2::warped(Expression::parse(trim(body), v0, v1).field(), domain);
  if (kind == "general") {
    const auto parts = split(body, ';');
    if (parts.size() != 3) throw ParseError("general metric needs g11;g12;g22");
    return Metric2::general(Expression::parse(trim(parts[0]), v0, v1).field(),
                            Expression::parse(trim(parts[1]), v0, v1).field(),
                            Expression::parse(trim(parts[2]), v0, v1).field(), domain);
  }
  throw ParseError("unknown metric kind '" + kind + "' (conformal, warped, general)");
}

}  // namespace biharm
