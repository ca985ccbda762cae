#include "tmspline/funcs.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "tmspline/io.hpp"

namespace tmspline {

struct Expr::Node {
  enum class Kind { kNumber, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
  Kind kind;
  double value = 0;
  std::string name;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Node::Kind;

struct CallInfo {
  const char* name;
  std::size_t arity;
};
constexpr CallInfo kCalls[] = {{"exp", 1}, {"abs", 1}, {"sign", 1},
                               {"min", 2}, {"max", 2}, {"sinh", 1}};

NodePtr make(Kind k, std::vector<NodePtr> args = {}, double v = 0, std::string name = {}) {
  return std::make_shared<const Node>(Node{k, v, std::move(name), std::move(args)});
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) {
    if (pos_ >= s_.size()) throw ParseError(what + ", found end of input", pos_);
    throw ParseError(what + ", found '" + std::string(1, s_[pos_]) + "'", pos_);
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Kind::kAdd, {lhs, term()});
      else if (accept('-'))
        lhs = make(Kind::kSub, {lhs, term()});
      else
        return lhs;
    }
  }
  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Kind::kMul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Kind::kDiv, {lhs, unary()});
      else
        return lhs;
    }
  }
  NodePtr unary() {
    if (accept('-')) return make(Kind::kNeg, {unary()});
    if (accept('+')) return unary();
    return power();
  }
  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Kind::kPow, {base, unary()});
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("expected operand");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    fail("expected operand");
  }
  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        digits();
      else
        pos_ = save;
    }
    double v = 0;
    auto [end, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || end != s_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make(Kind::kNumber, {}, v);
  }
  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "x") return make(Kind::kVar);
    auto it = std::find_if(std::begin(kCalls), std::end(kCalls),
                           [&](const CallInfo& ci) { return name == ci.name; });
    if (it == std::end(kCalls)) throw ParseError("unknown identifier '" + name + "'", start);
    expect('(');
    std::vector<NodePtr> args{expr()};
    while (accept(',')) args.push_back(expr());
    expect(')');
    if (args.size() != it->arity)
      throw ParseError(name + " takes " + std::to_string(it->arity) + " argument(s)", start);
    return make(Kind::kCall, std::move(args), 0, name);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double eval(const Node& n, double x) {
  auto arg = [&](std::size_t i) { return eval(*n.args[i], x); };
  switch (n.kind) {
    case Kind::kNumber: return n.value;
    case Kind::kVar: return x;
    case Kind::kNeg: return -arg(0);
    case Kind::kAdd: return checked(arg(0) + arg(1), "+");
    case Kind::kSub: return checked(arg(0) - arg(1), "-");
    case Kind::kMul: return checked(arg(0) * arg(1), "*");
    case Kind::kDiv: {
      const double d = arg(1);
      if (d == 0) throw DomainError("division by zero");
      return checked(arg(0) / d, "/");
    }
    case Kind::kPow: return checked(std::pow(arg(0), arg(1)), "^");
    case Kind::kCall: {
      const double u = arg(0);
      if (n.name == "exp") return checked(std::exp(u), "exp");
      if (n.name == "sinh") return checked(std::sinh(u), "sinh");
      if (n.name == "abs") return std::abs(u);
      if (n.name == "sign") return u > 0 ? 1.0 : (u < 0 ? -1.0 : 0.0);
      if (n.name == "min") return std::min(u, arg(1));
      if (n.name == "max") return std::max(u, arg(1));
      break;
    }
  }
  throw DomainError("unknown node");
}

std::string print(const Node& n) {
  auto arg = [&](std::size_t i) { return print(*n.args[i]); };
  auto bin = [&](const char* op) { return "(" + arg(0) + " " + op + " " + arg(1) + ")"; };
  switch (n.kind) {
    case Kind::kNumber: return format_double(n.value);
    case Kind::kVar: return "x";
    case Kind::kNeg: return "(-" + arg(0) + ")";
    case Kind::kAdd: return bin("+");
    case Kind::kSub: return bin("-");
    case Kind::kMul: return bin("*");
    case Kind::kDiv: return bin("/");
    case Kind::kPow: return bin("^");
    case Kind::kCall: {
      std::string s = n.name + "(" + arg(0);
      for (std::size_t i = 1; i < n.args.size(); ++i) s += ", " + arg(i);
      return s + ")";
    }
  }
  return "?";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

double Expr::operator()(double x) const { return eval(*root_, x); }
std::string Expr::print() const { return tmspline::print(*root_); }

Expr parse(std::string_view src) { return Expr(Parser(src).parse_all()); }

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> list = {
      {"exp", [](double x) { return std::exp(x); }},
      {"x2sign", [](double x) { return x > 0 ? x * x : (x < 0 ? -x * x : 0.0); }},
      {"xplus3", [](double x) { return x > 0 ? x * x * x : 0.0; }},
      {"sinh", [](double x) { return std::sinh(x); }},
      {"quartic",
       [](double x) {
         const double t = 0.5 * (x + 1);
         return 0.25 * t * t * t * t;
       }},
      {"negcube", [](double x) { return -x * x * x; }, false},
  };
  return list;
}

RealFunction resolve_function(std::string_view spec) {
  const auto s = trim(spec);
  for (const auto& b : builtins())
    if (s == b.name) return b.f;
  if (s.starts_with("cubic(") && s.ends_with(")")) {
    // coefficients are constant expressions
    std::vector<double> c;
    std::size_t start = 6;
    int depth = 0;
    for (std::size_t i = 6; i < s.size(); ++i) {
      const char ch = s[i];
      if (ch == '(') ++depth;
      if ((ch == ',' && depth == 0) || (ch == ')' && depth-- == 0)) {
        c.push_back(parse(s.substr(start, i - start))(0.0));
        start = i + 1;
      }
    }
    if (c.size() != 4) throw ParseError("cubic takes 4 coefficients", 0);
    return [c3 = c[0], c2 = c[1], c1 = c[2], c0 = c[3]](double x) {
      return ((c3 * x + c2) * x + c1) * x + c0;
    };
  }
  return parse(s);
}

const char* expression_syntax() {
  return "Function: builtin name (exp, x2sign, xplus3, sinh, quartic, negcube),\n"
         "  cubic(c3,c2,c1,c0), or an expression in x with + - * / ^ and\n"
         "  exp abs sign min max sinh; ^ binds tighter than unary minus and is\n"
         "  right-associative (-x^2 = -(x^2), 2^3^2 = 2^9); sign(0) = 0.";
}

}  // namespace tmspline
