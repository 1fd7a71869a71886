#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fotw/error.hpp"
#include "fotw/formula.hpp"

namespace fotw {

struct ParsedFormula {
  Formula formula;
  Vocabulary vocabulary;
};

namespace detail {

inline constexpr std::string_view kAuxPrefix = "__aux_";

enum class Tok { Rel, Var, Const, Forall, Exists, LParen, RParen, Comma, Dot, Not, And, Or,
                 Implies, Iff, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line;
    int cl = col;
    auto punct = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(src.substr(i, n)), l, cl});
      advance(n);
    };
    if (src.substr(i, 3) == "<->") { punct(Tok::Iff, 3); continue; }
    if (src.substr(i, 2) == "->") { punct(Tok::Implies, 2); continue; }
    switch (c) {
      case '(': punct(Tok::LParen, 1); continue;
      case ')': punct(Tok::RParen, 1); continue;
      case ',': punct(Tok::Comma, 1); continue;
      case '.': punct(Tok::Dot, 1); continue;
      case '~': punct(Tok::Not, 1); continue;
      case '&': punct(Tok::And, 1); continue;
      case '|': punct(Tok::Or, 1); continue;
      default: break;
    }
    if (c == '@') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j == i + 1) throw ParseError("expected constant name after '@'", l, cl);
      out.push_back({Tok::Const, std::string(src.substr(i + 1, j - i - 1)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      if (word.rfind(kAuxPrefix, 0) == 0) {
        throw ParseError("identifier '" + word + "' uses the reserved prefix __aux_", l, cl);
      }
      Tok t;
      if (word == "forall") {
        t = Tok::Forall;
      } else if (word == "exists") {
        t = Tok::Exists;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        t = Tok::Rel;
      } else if (std::islower(static_cast<unsigned char>(c))) {
        t = Tok::Var;
      } else {
        throw ParseError("identifier '" + word + "' must start with a letter", l, cl);
      }
      out.push_back({t, word, l, cl});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParsedFormula run() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return {f, std::move(voc_)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  Token expect(Tok t, const char* what) {
    if (!at(t)) {
      fail(std::string("expected ") + what +
           (peek().kind == Tok::End ? " but input ended" : ", found '" + peek().text + "'"));
    }
    return take();
  }

  // ~a as a literal when a is an atom, otherwise a Not node.
  static Formula negate(const Formula& a) {
    if (a.kind() == Kind::Atom) return Formula::neg_atom(a.relation(), a.terms());
    return Formula::negation(a);
  }

  Formula formula() {
    if (at(Tok::Forall) || at(Tok::Exists)) {
      Quant q = take().kind == Tok::Forall ? Quant::Forall : Quant::Exists;
      std::vector<std::string> vars;
      vars.push_back(expect(Tok::Var, "variable after quantifier").text);
      while (at(Tok::Var)) vars.push_back(take().text);
      expect(Tok::Dot, "'.' after quantified variables");
      Formula body = formula();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        body = Formula::quantifier(q, *it, body);
      }
      return body;
    }
    return iff();
  }

  Formula iff() {
    Formula lhs = impl();
    while (at(Tok::Iff)) {
      take();
      Formula rhs = impl();
      lhs = Formula::conj({Formula::disj({negate(lhs), rhs}), Formula::disj({negate(rhs), lhs})});
    }
    return lhs;
  }

  // Right associative.
  Formula impl() {
    Formula lhs = disjunction();
    if (!at(Tok::Implies)) return lhs;
    take();
    Formula rhs = impl();
    return Formula::disj({negate(lhs), rhs});
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (at(Tok::Or)) {
      take();
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts.front() : Formula::disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (at(Tok::And)) {
      take();
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts.front() : Formula::conj(std::move(parts));
  }

  Formula unary() {
    if (at(Tok::Not)) {
      take();
      return negate(unary());
    }
    if (at(Tok::LParen)) {
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::Forall) || at(Tok::Exists)) {
      fail("quantifier must be parenthesised here");
    }
    return atom();
  }

  Formula atom() {
    Token rel = expect(Tok::Rel, "relation name");
    expect(Tok::LParen, "'(' after relation name");
    std::vector<Term> terms{term()};
    while (at(Tok::Comma)) {
      take();
      terms.push_back(term());
    }
    expect(Tok::RParen, "')' closing the atom");
    try {
      voc_.add_relation(rel.text, static_cast<int>(terms.size()));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), rel.line, rel.column);
    }
    return Formula::atom(rel.text, std::move(terms));
  }

  Term term() {
    if (at(Tok::Var)) return Term::var(take().text);
    if (at(Tok::Const)) {
      Token t = take();
      voc_.constants.insert(t.text);
      return Term::cons(t.text);
    }
    fail("expected a variable or @constant");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Vocabulary voc_;
};

enum Prec { kTop = 0, kOr = 1, kAnd = 2, kUnary = 3 };

inline void render_terms(const Formula& f, std::string& out) {
  out += f.relation();
  if (f.terms().empty()) return;  // 0-ary auxiliary atoms
  out += '(';
  for (std::size_t i = 0; i < f.terms().size(); ++i) {
    if (i) out += ',';
    if (f.terms()[i].constant) out += '@';
    out += f.terms()[i].name;
  }
  out += ')';
}

inline void render(const Formula& f, Prec ctx, std::string& out);

inline void render_junction(const std::vector<Formula>& kids, const char* op, Prec self,
                            Kind kind, std::string& out) {
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += op;
    const Formula& c = kids[i];
    // Nested nodes of the same kind keep their brackets so parsing does not flatten them.
    bool paren = c.kind() == kind || c.is_quantifier() ||
                 (self == kAnd && c.kind() == Kind::Or) || c.kind() == Kind::Combination;
    if (paren) out += '(';
    render(c, paren ? kTop : self, out);
    if (paren) out += ')';
  }
}

inline void render(const Formula& f, Prec ctx, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom:
      render_terms(f, out);
      return;
    case Kind::NegAtom:
      out += '~';
      render_terms(f, out);
      return;
    case Kind::Not: {
      out += '~';
      const Formula& c = f.body();
      bool paren = !(c.is_literal() || c.kind() == Kind::Not);
      if (paren) out += '(';
      render(c, paren ? kTop : kUnary, out);
      if (paren) out += ')';
      return;
    }
    case Kind::And:
      render_junction(f.children(), " & ", kAnd, Kind::And, out);
      return;
    case Kind::Or:
      render_junction(f.children(), " | ", kOr, Kind::Or, out);
      return;
    case Kind::Quantifier: {
      (void)ctx;
      const Formula* cur = &f;
      out += f.quant() == Quant::Exists ? "exists" : "forall";
      while (cur->is_quantifier() && cur->quant() == f.quant()) {
        out += ' ';
        out += cur->var();
        cur = &cur->body();
      }
      out += ". ";
      render(*cur, kTop, out);
      return;
    }
    case Kind::Combination: {
      // Display only; not parseable.
      bool dnf = f.form() == NormalForm::Dnf;
      out += dnf ? "{dnf " : "{cnf ";
      for (std::size_t i = 0; i < f.clauses().size(); ++i) {
        if (i) out += dnf ? " | " : " & ";
        out += '[';
        for (std::size_t j = 0; j < f.clauses()[i].size(); ++j) {
          if (j) out += dnf ? " & " : " | ";
          const Formula& c = f.children()[f.clauses()[i][j]];
          bool paren = !(c.is_literal());
          if (paren) out += '(';
          render(c, kTop, out);
          if (paren) out += ')';
        }
        out += ']';
      }
      out += '}';
      return;
    }
  }
}

}  // namespace detail

inline ParsedFormula parse(std::string_view text) {
  return detail::Parser(detail::lex(text)).run();
}

inline Formula parse_formula(std::string_view text) { return parse(text).formula; }

// Pretty-printer; parse(render(f)).formula == f for every parser-reachable AST.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render(f, detail::kTop, out);
  return out;
}

}  // namespace fotw
