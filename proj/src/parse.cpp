#include "cpcf/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace cpcf {

namespace {

enum class Tok {
  End, Ident, Bottom, Tilde, Amp, Pipe, Arrow, PrecEq, CfGt, McfGt,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace, LAngle, RAngle, Comma,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
    tok_.pos = i_;
    tok_.text.clear();
    if (i_ >= s_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = s_[i_];
    if (s_.compare(i_, 3, "_|_") == 0) {
      tok_.kind = Tok::Bottom;
      i_ += 3;
      return;
    }
    if (ident_char(c)) {
      std::size_t j = i_;
      while (j < s_.size() && ident_char(s_[j])) ++j;
      tok_.text = s_.substr(i_, j - i_);
      i_ = j;
      if ((tok_.text == "cf" || tok_.text == "mcf") && i_ < s_.size() &&
          s_[i_] == '>') {
        ++i_;
        tok_.kind = tok_.text == "cf" ? Tok::CfGt : Tok::McfGt;
        return;
      }
      tok_.kind = Tok::Ident;
      return;
    }
    switch (c) {
      case '~': tok_.kind = Tok::Tilde; ++i_; return;
      case '&': tok_.kind = Tok::Amp; ++i_; return;
      case '|': tok_.kind = Tok::Pipe; ++i_; return;
      case '(': tok_.kind = Tok::LParen; ++i_; return;
      case ')': tok_.kind = Tok::RParen; ++i_; return;
      case '[': tok_.kind = Tok::LBrack; ++i_; return;
      case ']': tok_.kind = Tok::RBrack; ++i_; return;
      case '{': tok_.kind = Tok::LBrace; ++i_; return;
      case '}': tok_.kind = Tok::RBrace; ++i_; return;
      case '<': tok_.kind = Tok::LAngle; ++i_; return;
      case '>': tok_.kind = Tok::RAngle; ++i_; return;
      case ',': tok_.kind = Tok::Comma; ++i_; return;
      case '-':
        if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
          tok_.kind = Tok::Arrow;
          i_ += 2;
          return;
        }
        throw ParseError("stray '-'", i_);
      case '=':
        if (i_ + 1 < s_.size() && s_[i_ + 1] == '<') {
          tok_.kind = Tok::PrecEq;
          i_ += 2;
          return;
        }
        throw ParseError("stray '='", i_);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string& s) : lex_(s) {}

  Formula parse() {
    Formula f = expr();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

  ClauseSet parse_clause_only() {
    ClauseSet c = clause();
    expect(Tok::End, "trailing input after clause set");
    return c;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().pos);
  }

  Token expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) fail(what);
    return lex_.take();
  }

  Formula expr() {
    Formula lhs = impl();
    switch (lex_.peek().kind) {
      case Tok::PrecEq: {
        lex_.take();
        CompKind kind = CompKind::Plain;
        ClauseSet cls;
        if (lex_.peek().kind == Tok::LBrace) {
          cls = clause();
          Token tag = expect(Tok::Ident, "expected nc, cp or ms after clause");
          if (tag.text == "nc") kind = CompKind::NC;
          else if (tag.text == "cp") kind = CompKind::CP;
          else if (tag.text == "ms") kind = CompKind::MS;
          else throw ParseError("unknown comparative tag '" + tag.text + "'",
                                tag.pos);
        }
        return Formula::comp(kind, std::move(cls), std::move(lhs), expr());
      }
      case Tok::CfGt:
        lex_.take();
        return Formula::counterfactual(std::move(lhs), expr());
      case Tok::McfGt:
        lex_.take();
        return Formula::might_counterfactual(std::move(lhs), expr());
      default:
        return lhs;
    }
  }

  Formula impl() {
    Formula lhs = disj();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Formula::implies(std::move(lhs), impl());
    }
    return lhs;
  }

  Formula disj() {
    Formula f = conj();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      f = Formula::lor(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = neg();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = Formula::land(std::move(f), neg());
    }
    return f;
  }

  Formula neg() {
    if (lex_.peek().kind == Tok::Tilde) {
      lex_.take();
      return Formula::lnot(neg());
    }
    return prim();
  }

  Formula prim() {
    switch (lex_.peek().kind) {
      case Tok::Ident:
        return Formula::atom(lex_.take().text);
      case Tok::Bottom:
        lex_.take();
        return Formula::bottom();
      case Tok::LParen: {
        lex_.take();
        Formula f = expr();
        expect(Tok::RParen, "expected ')'");
        return f;
      }
      case Tok::LBrack: {
        lex_.take();
        Formula ant = expr();
        expect(Tok::Comma, "expected ',' before clause set");
        ClauseSet cls = clause();
        expect(Tok::RBrack, "expected ']'");
        return Formula::cp_box(std::move(ant), std::move(cls), expr());
      }
      case Tok::LAngle: {
        lex_.take();
        Formula ant = expr();
        expect(Tok::Comma, "expected ',' before clause set");
        ClauseSet cls = clause();
        expect(Tok::RAngle, "expected '>'");
        return Formula::cp_diamond(std::move(ant), std::move(cls), expr());
      }
      default:
        fail("expected a formula");
    }
  }

  ClauseSet clause() {
    expect(Tok::LBrace, "expected '{'");
    std::vector<Formula> members;
    if (lex_.peek().kind != Tok::RBrace) {
      members.push_back(expr());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        members.push_back(expr());
      }
    }
    expect(Tok::RBrace, "expected '}'");
    return ClauseSet(std::move(members));
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(const std::string& text) {
  return Parser(text).parse();
}

ClauseSet parse_clause_set(const std::string& text) {
  return Parser(text).parse_clause_only();
}

}  // namespace cpcf
