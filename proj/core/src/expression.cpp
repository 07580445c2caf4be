#include "cornerq/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "cornerq/errors.hpp"

namespace cornerq {

struct Expression::Node {
  enum class Kind { Number, Pi, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::string func;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

const char* const kFunctions[] = {"sin", "cos", "tan", "exp", "log", "sqrt"};

NodePtr make(Node::Kind kind, std::vector<NodePtr> args = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable) : s_(text), var_(variable) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  bool eat_minus() {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = make(Node::Kind::Add, {lhs, term()});
      } else if (eat_minus()) {
        lhs = make(Node::Kind::Sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*')) {
        lhs = make(Node::Kind::Mul, {lhs, factor()});
      } else if (eat('/')) {
        lhs = make(Node::Kind::Div, {lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (eat('^')) return make(Node::Kind::Pow, {base, factor()});
    return base;
  }

  NodePtr unary() {
    if (eat_minus()) return make(Node::Kind::Neg, {unary()});
    return atom();
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "pi") return make(Node::Kind::Pi);
      if (name == var_) return make(Node::Kind::Variable);
      for (const char* f : kFunctions) {
        if (name == f) {
          if (!eat('(')) fail("expected '(' after " + std::string(name));
          NodePtr arg = expr();
          if (!eat(')')) fail("expected ')'");
          auto n = std::make_shared<Node>();
          n->kind = Node::Kind::Call;
          n->func = std::string(name);
          n->args = {arg};
          return n;
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string_view lit = s_.substr(start, pos_ - start);
    double v = 0.0;
    const auto res = std::from_chars(lit.data(), lit.data() + lit.size(), v);
    if (res.ec != std::errc() || res.ptr != lit.data() + lit.size() || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number '" + std::string(lit) + "'");
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Number;
    n->number = v;
    return n;
  }

  std::string_view s_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

double eval(const Node& n, double x) {
  switch (n.kind) {
    case Node::Kind::Number: return n.number;
    case Node::Kind::Pi: return 3.14159265358979323846;
    case Node::Kind::Variable: return x;
    case Node::Kind::Neg: return -eval(*n.args[0], x);
    case Node::Kind::Add: return eval(*n.args[0], x) + eval(*n.args[1], x);
    case Node::Kind::Sub: return eval(*n.args[0], x) - eval(*n.args[1], x);
    case Node::Kind::Mul: return eval(*n.args[0], x) * eval(*n.args[1], x);
    case Node::Kind::Div: return eval(*n.args[0], x) / eval(*n.args[1], x);
    case Node::Kind::Pow: return std::pow(eval(*n.args[0], x), eval(*n.args[1], x));
    case Node::Kind::Call: {
      const double a = eval(*n.args[0], x);
      if (n.func == "sin") return std::sin(a);
      if (n.func == "cos") return std::cos(a);
      if (n.func == "tan") return std::tan(a);
      if (n.func == "exp") return std::exp(a);
      if (n.func == "log") return std::log(a);
      return std::sqrt(a);
    }
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print(const Node& n, const std::string& var) {
  auto bin = [&](const char* op) { return "(" + print(*n.args[0], var) + " " + op + " " + print(*n.args[1], var) + ")"; };
  switch (n.kind) {
    case Node::Kind::Number: return format_number(n.number);
    case Node::Kind::Pi: return "pi";
    case Node::Kind::Variable: return var;
    case Node::Kind::Neg: return "(-" + print(*n.args[0], var) + ")";
    case Node::Kind::Add: return bin("+");
    case Node::Kind::Sub: return bin("-");
    case Node::Kind::Mul: return bin("*");
    case Node::Kind::Div: return bin("/");
    case Node::Kind::Pow: return bin("^");
    case Node::Kind::Call: return n.func + "(" + print(*n.args[0], var) + ")";
  }
  return {};
}

bool equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.func != b.func || a.args.size() != b.args.size()) return false;
  if (a.kind == Node::Kind::Number && a.number != b.number) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root, std::string source, std::string variable)
    : root_(std::move(root)), source_(std::move(source)), variable_(std::move(variable)) {}

Expression Expression::parse(std::string_view text, std::string_view variable) {
  Parser p(text, variable);
  return Expression(p.parse(), std::string(text), std::string(variable));
}

double Expression::operator()(double x) const { return eval(*root_, x); }

std::string Expression::print() const { return cornerq::print(*root_, variable_); }

bool Expression::operator==(const Expression& other) const {
  return variable_ == other.variable_ && equal(*root_, *other.root_);
}

}  // namespace cornerq
