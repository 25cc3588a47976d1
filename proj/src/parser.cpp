#include "qsde/parser.hpp"

#include <cctype>
#include <utility>

#include "qsde/errors.hpp"

namespace qsde {

namespace {

struct Token {
  enum class Type { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };
  Type type;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= src_.size()) {
      tok_ = {Token::Type::end, "", start};
      return;
    }
    char c = src_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
      if (j < src_.size() && src_[j] == '.') {
        throw SyntaxError("floating literals are not accepted; write a/b", j);
      }
      tok_ = {Token::Type::number, src_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < src_.size() &&
             std::isalnum(static_cast<unsigned char>(src_[j]))) ++j;
      tok_ = {Token::Type::ident, src_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    Token::Type t;
    switch (c) {
      case '+': t = Token::Type::plus; break;
      case '-': t = Token::Type::minus; break;
      case '*': t = Token::Type::star; break;
      case '/': t = Token::Type::slash; break;
      case '^': t = Token::Type::caret; break;
      case '(': t = Token::Type::lparen; break;
      case ')': t = Token::Type::rparen; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
    tok_ = {t, std::string(1, c), start};
    ++i_;
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token tok_;
};

ExprAst node(ExprNode::Kind k) {
  auto n = std::make_unique<ExprNode>();
  n->kind = k;
  return n;
}

class Parser {
 public:
  Parser(const std::string& src, int modes) : lex_(src), modes_(modes) {}

  ExprAst run() {
    ExprAst e = parse_sum();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::end) {
      throw SyntaxError("unexpected trailing input '" + t.text + "'", t.pos);
    }
    return e;
  }

 private:
  // sum := product (('+'|'-') product)*
  ExprAst parse_sum() {
    ExprAst lhs = parse_product();
    while (true) {
      Token::Type t = lex_.peek().type;
      if (t != Token::Type::plus && t != Token::Type::minus) return lhs;
      lex_.take();
      ExprAst n = node(t == Token::Type::plus ? ExprNode::Kind::add : ExprNode::Kind::sub);
      n->lhs = std::move(lhs);
      n->rhs = parse_product();
      lhs = std::move(n);
    }
  }

  // product := unary (('*'|'/') unary)*
  ExprAst parse_product() {
    ExprAst lhs = parse_unary();
    while (true) {
      Token::Type t = lex_.peek().type;
      if (t != Token::Type::star && t != Token::Type::slash) return lhs;
      lex_.take();
      ExprAst n = node(t == Token::Type::star ? ExprNode::Kind::mul : ExprNode::Kind::div);
      n->lhs = std::move(lhs);
      n->rhs = parse_unary();
      lhs = std::move(n);
    }
  }

  ExprAst parse_unary() {
    if (lex_.peek().type == Token::Type::minus) {
      lex_.take();
      ExprAst n = node(ExprNode::Kind::neg);
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  ExprAst parse_power() {
    ExprAst base = parse_primary();
    if (lex_.peek().type != Token::Type::caret) return base;
    Token caret = lex_.take();
    Token e = lex_.peek();
    if (e.type != Token::Type::number) {
      throw BadExponent("exponent must be a non-negative integer literal", caret.pos + 1);
    }
    lex_.take();
    ExprAst n = node(ExprNode::Kind::pow);
    n->lhs = std::move(base);
    n->exponent = std::stoi(e.text);
    return n;
  }

  ExprAst parse_primary() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::number: {
        ExprAst n = node(ExprNode::Kind::number);
        n->value = Rational(std::stoll(t.text));
        return n;
      }
      case Token::Type::lparen: {
        ExprAst inner = parse_sum();
        Token close = lex_.take();
        if (close.type != Token::Type::rparen) {
          throw SyntaxError("expected ')'", close.pos);
        }
        return inner;
      }
      case Token::Type::ident:
        return parse_ident(t);
      default:
        throw SyntaxError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  ExprAst parse_ident(const Token& t) {
    if (t.text == "i") return node(ExprNode::Kind::imag_unit);
    if (t.text == "cos" || t.text == "sin" || t.text == "exp") {
      Token open = lex_.take();
      if (open.type != Token::Type::lparen) {
        throw SyntaxError("expected '(' after function name", open.pos);
      }
      ExprAst arg = parse_sum();
      Token close = lex_.take();
      if (close.type != Token::Type::rparen) {
        throw SyntaxError("expected ')'", close.pos);
      }
      ExprAst n = node(ExprNode::Kind::func);
      n->func = t.text == "cos"   ? ExprNode::Func::cos
                : t.text == "sin" ? ExprNode::Func::sin
                                  : ExprNode::Func::exp;
      n->lhs = std::move(arg);
      return n;
    }
    char head = t.text[0];
    if (head == 'q' || head == 'p') {
      int mode = 1;
      if (t.text.size() > 1) {
        for (std::size_t k = 1; k < t.text.size(); ++k) {
          if (!std::isdigit(static_cast<unsigned char>(t.text[k]))) {
            throw UnknownVariable("unknown variable '" + t.text + "'", t.pos);
          }
        }
        mode = std::stoi(t.text.substr(1));
      } else if (modes_ != 1) {
        throw UnknownVariable("bare '" + t.text + "' is only valid with one mode; use " +
                                  t.text + "<k>",
                              t.pos);
      }
      if (mode < 1 || mode > modes_) {
        throw UnknownVariable("variable '" + t.text + "' is out of range for " +
                                  std::to_string(modes_) + " mode(s)",
                              t.pos);
      }
      ExprAst n = node(ExprNode::Kind::variable);
      n->var = head == 'q' ? VarId::q(mode) : VarId::p(mode);
      return n;
    }
    throw UnknownVariable("unknown identifier '" + t.text + "'", t.pos);
  }

  Lexer lex_;
  int modes_;
};

Rational factorial(int k) {
  Rational r(1);
  for (int j = 2; j <= k; ++j) r *= Rational(j);
  return r;
}

NcPoly expand_function(ExprNode::Func func, const NcPoly& arg, int modes,
                       std::optional<int> cap) {
  if (!cap) throw CapRequired("cos/sin/exp need a degree cap");
  if (!arg.constant_term().is_zero()) {
    throw SyntaxError("function argument must have zero constant term under a degree cap");
  }
  if (arg.is_zero()) {
    // cos(0) = 1, sin(0) = 0, exp(0) = 1.
    Scalar c0 = func == ExprNode::Func::sin ? Scalar() : Scalar(1);
    return NcPoly::constant(c0, modes);
  }
  // Powers of the argument under the cap implement the series truncation.
  NcPoly capped_arg = arg.with_cap(cap);
  NcPoly power = NcPoly::constant(Scalar(1), modes, cap);
  NcPoly sum = NcPoly::zero(modes, cap);
  for (int k = 0; k <= *cap; ++k) {
    if (k > 0) {
      power *= capped_arg;
      if (power.is_zero()) break;
    }
    Scalar coeff;
    switch (func) {
      case ExprNode::Func::cos:
        if (k % 2 == 0) coeff = Scalar(Rational(k % 4 == 0 ? 1 : -1) / factorial(k));
        break;
      case ExprNode::Func::sin:
        if (k % 2 == 1) coeff = Scalar(Rational(k % 4 == 1 ? 1 : -1) / factorial(k));
        break;
      case ExprNode::Func::exp:
        coeff = Scalar(Rational(1) / factorial(k));
        break;
    }
    if (!coeff.is_zero()) sum += coeff * power;
  }
  return sum.without_cap();
}

}  // namespace

ExprAst parse(const std::string& src, int modes) { return Parser(src, modes).run(); }

NcPoly elaborate(const ExprNode& ast, int modes, std::optional<int> cap) {
  switch (ast.kind) {
    case ExprNode::Kind::number:
      return NcPoly::constant(Scalar(ast.value), modes);
    case ExprNode::Kind::imag_unit:
      return NcPoly::constant(Scalar::i(), modes);
    case ExprNode::Kind::variable:
      return NcPoly::generator(ast.var, modes);
    case ExprNode::Kind::neg:
      return -elaborate(*ast.lhs, modes, cap);
    case ExprNode::Kind::add:
      return elaborate(*ast.lhs, modes, cap) + elaborate(*ast.rhs, modes, cap);
    case ExprNode::Kind::sub:
      return elaborate(*ast.lhs, modes, cap) - elaborate(*ast.rhs, modes, cap);
    case ExprNode::Kind::mul:
      return elaborate(*ast.lhs, modes, cap) * elaborate(*ast.rhs, modes, cap);
    case ExprNode::Kind::div: {
      NcPoly num = elaborate(*ast.lhs, modes, cap);
      NcPoly den = elaborate(*ast.rhs, modes, cap);
      if (!num.is_constant() || !den.is_constant()) {
        throw SyntaxError("division is defined for scalar literals only");
      }
      return NcPoly::constant(num.constant_term() / den.constant_term(), modes);
    }
    case ExprNode::Kind::pow:
      return elaborate(*ast.lhs, modes, cap).pow(ast.exponent);
    case ExprNode::Kind::func:
      return expand_function(ast.func, elaborate(*ast.lhs, modes, cap), modes, cap);
  }
  throw Error("corrupt AST");
}

NcPoly parse_poly(const std::string& src, int modes, std::optional<int> cap) {
  ExprAst ast = parse(src, modes);
  return elaborate(*ast, modes, cap);
}

Scalar parse_scalar(const std::string& src) {
  NcPoly p = parse_poly(src, 1);
  if (!p.is_constant()) {
    throw SyntaxError("expected a scalar expression, got '" + src + "'");
  }
  return p.constant_term();
}

}  // namespace qsde
