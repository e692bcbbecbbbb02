#include "conlog/syntax.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

#include "conlog/error.hpp"

namespace conlog {

namespace {

enum class Tok {
  ident,     // variable, possibly with a sort suffix
  prefix,    // dia, box, dia-, box-, boxm, boxm-
  langle,    // <NAME>
  lbracket,  // [NAME]
  tilde,
  amp,
  bar,
  arrow,
  dblarrow,
  lparen,
  rparen,
  comma,
  ffalse,
  ftrue,
  end,
};

struct Token {
  Tok kind;
  std::string text;  // identifier / keyword / modality name
  std::string sort_suffix;
  std::size_t begin = 0;
  std::size_t end = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_prefix_keyword(std::string_view w) {
  return w == "dia" || w == "box" || w == "boxm" || w == "dia-" || w == "box-" || w == "boxm-";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t start = pos_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", "", start, start});
        return out;
      }
      const char c = text_[pos_];
      if (is_ident_start(c)) {
        out.push_back(word());
        continue;
      }
      switch (c) {
        case '~': out.push_back(single(Tok::tilde)); continue;
        case '&': out.push_back(single(Tok::amp)); continue;
        case '|': out.push_back(single(Tok::bar)); continue;
        case '(': out.push_back(single(Tok::lparen)); continue;
        case ')': out.push_back(single(Tok::rparen)); continue;
        case ',': out.push_back(single(Tok::comma)); continue;
        case '-':
          if (peek(1) == '>') {
            pos_ += 2;
            out.push_back({Tok::arrow, "->", "", start, pos_});
            continue;
          }
          break;
        case '<':
          if (peek(1) == '-' && peek(2) == '>') {
            pos_ += 3;
            out.push_back({Tok::dblarrow, "<->", "", start, pos_});
            continue;
          }
          out.push_back(bracketed(Tok::langle, '>'));
          continue;
        case '[':
          out.push_back(bracketed(Tok::lbracket, ']'));
          continue;
        case '#':
          if (peek(1) == 'f' || peek(1) == 't') {
            const Tok k = peek(1) == 'f' ? Tok::ffalse : Tok::ftrue;
            pos_ += 2;
            if (pos_ < text_.size() && is_ident_char(text_[pos_])) break;
            out.push_back({k, std::string(text_.substr(start, 2)), "", start, pos_});
            continue;
          }
          break;
        default:
          break;
      }
      throw ParseError("unexpected character '" + std::string(1, text_[start]) + "'", 0, start + 1);
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Token single(Tok kind) {
    Token t{kind, std::string(1, text_[pos_]), "", pos_, pos_ + 1};
    ++pos_;
    return t;
  }

  Token word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string w(text_.substr(start, pos_ - start));
    if (w == "dia" || w == "box" || w == "boxm") {
      if (peek(0) == '-' && peek(1) != '>') {
        ++pos_;
        w += '-';
      }
      return {Tok::prefix, w, "", start, pos_};
    }
    Token t{Tok::ident, w, "", start, pos_};
    if (peek(0) == ':') {
      ++pos_;
      const std::size_t s = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      if (s == pos_) throw ParseError("missing sort after ':'", 0, s + 1);
      t.sort_suffix = std::string(text_.substr(s, pos_ - s));
      t.end = pos_;
    }
    return t;
  }

  Token bracketed(Tok kind, char close) {
    const std::size_t start = pos_;
    ++pos_;
    const std::size_t name_start = pos_;
    while (pos_ < text_.size() && text_[pos_] != close) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("whitespace inside modality brackets", 0, pos_ + 1);
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) throw ParseError(std::string("missing '") + close + "'", 0, start + 1);
    if (pos_ == name_start) throw ParseError("empty modality name", 0, start + 1);
    std::string name(text_.substr(name_start, pos_ - name_start));
    ++pos_;
    return {kind, name, "", start, pos_};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Sort-agnostic parse tree; elaboration against a signature comes after.
struct Raw {
  enum class Kind { var, bot, top, neg, conj, disj, imp, iff, prefix, diamond, box };
  Kind kind;
  std::string name;
  std::string sort_suffix;
  std::vector<std::unique_ptr<Raw>> kids;
  std::size_t begin = 0;
  std::size_t end = 0;
};

using RawPtr = std::unique_ptr<Raw>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RawPtr run() {
    RawPtr f = formula();
    if (cur().kind != Tok::end) fail("unexpected '" + cur().text + "'");
    return f;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 0, cur().begin + 1);
  }

  RawPtr node(Raw::Kind k, std::size_t begin, std::size_t end) {
    auto r = std::make_unique<Raw>();
    r->kind = k;
    r->begin = begin;
    r->end = end;
    return r;
  }

  RawPtr join(Raw::Kind k, RawPtr a, RawPtr b) {
    auto r = node(k, a->begin, b->end);
    r->kids.push_back(std::move(a));
    r->kids.push_back(std::move(b));
    return r;
  }

  RawPtr formula() { return iff(); }

  RawPtr iff() {
    RawPtr a = imp();
    while (cur().kind == Tok::dblarrow) {
      ++i_;
      a = join(Raw::Kind::iff, std::move(a), imp());
    }
    return a;
  }

  RawPtr imp() {
    RawPtr a = disj();
    if (cur().kind == Tok::arrow) {
      ++i_;
      return join(Raw::Kind::imp, std::move(a), imp());
    }
    return a;
  }

  RawPtr disj() {
    RawPtr a = conj();
    while (cur().kind == Tok::bar) {
      ++i_;
      a = join(Raw::Kind::disj, std::move(a), conj());
    }
    return a;
  }

  RawPtr conj() {
    RawPtr a = unary();
    while (cur().kind == Tok::amp) {
      ++i_;
      a = join(Raw::Kind::conj, std::move(a), unary());
    }
    return a;
  }

  RawPtr unary() {
    const Token t = cur();
    switch (t.kind) {
      case Tok::tilde: {
        ++i_;
        RawPtr a = unary();
        auto r = node(Raw::Kind::neg, t.begin, a->end);
        r->kids.push_back(std::move(a));
        return r;
      }
      case Tok::prefix: {
        ++i_;
        RawPtr a = unary();
        auto r = node(Raw::Kind::prefix, t.begin, a->end);
        r->name = t.text;
        r->kids.push_back(std::move(a));
        return r;
      }
      case Tok::langle:
      case Tok::lbracket: {
        ++i_;
        if (cur().kind != Tok::lparen) fail("expected '(' after modality");
        ++i_;
        auto r = node(t.kind == Tok::langle ? Raw::Kind::diamond : Raw::Kind::box, t.begin, t.end);
        r->name = t.text;
        r->kids.push_back(formula());
        while (cur().kind == Tok::comma) {
          ++i_;
          r->kids.push_back(formula());
        }
        if (cur().kind != Tok::rparen) fail("expected ')' or ','");
        r->end = cur().end;
        ++i_;
        return r;
      }
      default:
        return atom();
    }
  }

  RawPtr atom() {
    const Token t = cur();
    switch (t.kind) {
      case Tok::ident: {
        ++i_;
        auto r = node(Raw::Kind::var, t.begin, t.end);
        r->name = t.text;
        r->sort_suffix = t.sort_suffix;
        return r;
      }
      case Tok::ffalse:
        ++i_;
        return node(Raw::Kind::bot, t.begin, t.end);
      case Tok::ftrue:
        ++i_;
        return node(Raw::Kind::top, t.begin, t.end);
      case Tok::lparen: {
        ++i_;
        RawPtr f = formula();
        if (cur().kind != Tok::rparen) fail("expected ')'");
        f->begin = t.begin;
        f->end = cur().end;
        ++i_;
        return f;
      }
      case Tok::end:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

class Elaborator {
 public:
  Elaborator(std::string_view text, const Signature& sig, SortDeclarations& decls)
      : text_(text), sig_(sig), decls_(decls) {}

  Formula run(const Raw& r, Sort expected) {
    switch (r.kind) {
      case Raw::Kind::var: return variable(r, expected);
      case Raw::Kind::bot: return Formula::bot(expected);
      case Raw::Kind::top: return Formula::top(expected);
      case Raw::Kind::neg: return Formula::neg(run(*r.kids[0], expected));
      case Raw::Kind::conj: return Formula::conj(run(*r.kids[0], expected), run(*r.kids[1], expected));
      case Raw::Kind::disj: return Formula::disj(run(*r.kids[0], expected), run(*r.kids[1], expected));
      case Raw::Kind::imp: return Formula::imp(run(*r.kids[0], expected), run(*r.kids[1], expected));
      case Raw::Kind::iff: return Formula::iff(run(*r.kids[0], expected), run(*r.kids[1], expected));
      case Raw::Kind::prefix: return prefix(r, expected);
      case Raw::Kind::diamond:
      case Raw::Kind::box: return polyadic(r, expected);
    }
    throw InvariantViolation("unknown parse node");
  }

 private:
  std::string snippet(const Raw& r) const {
    return std::string(text_.substr(r.begin, r.end - r.begin));
  }

  [[noreturn]] void sort_clash(const Raw& r, Sort actual, Sort expected) const {
    throw SortError("'" + snippet(r) + "' (column " + std::to_string(r.begin + 1) + ") has sort " +
                    sig_.sort_name(actual) + " where sort " + sig_.sort_name(expected) +
                    " is required");
  }

  Formula variable(const Raw& r, Sort expected) {
    std::optional<Sort> declared;
    if (!r.sort_suffix.empty()) {
      declared = sig_.find_sort(r.sort_suffix);
      if (!declared) {
        throw ParseError("unknown sort '" + r.sort_suffix + "'", 0, r.begin + 1);
      }
    }
    auto it = decls_.find(r.name);
    if (it != decls_.end()) {
      if (declared && *declared != it->second) {
        throw SortError("variable '" + r.name + "' was declared with sort " +
                        sig_.sort_name(it->second) + " and is now used with sort " +
                        sig_.sort_name(*declared));
      }
      declared = it->second;
    }
    const Sort s = declared.value_or(expected);
    if (s != expected) sort_clash(r, s, expected);
    decls_.emplace(r.name, s);
    return Formula::var(r.name, s);
  }

  std::vector<Formula> arguments(const Raw& r, const Modality& m) {
    if (r.kids.size() != m.arity()) {
      throw SortError("'" + m.name + "' takes " + std::to_string(m.arity()) + " arguments, got " +
                      std::to_string(r.kids.size()) + " in '" + snippet(r) + "'");
    }
    std::vector<Formula> args;
    for (std::size_t i = 0; i < r.kids.size(); ++i) args.push_back(run(*r.kids[i], m.arguments[i]));
    return args;
  }

  Formula prefix(const Raw& r, Sort expected) {
    std::shared_ptr<const Modality> m = sig_.find(r.name);
    bool dual = false;
    if (!m) {
      m = sig_.find_by_dual_keyword(r.name);
      dual = true;
    }
    if (!m) throw SignatureError("modality '" + r.name + "' is outside the signature");
    if (m->result != expected) sort_clash(r, m->result, expected);
    auto args = arguments(r, *m);
    return dual ? Formula::dual(m, std::move(args)) : Formula::modal(m, std::move(args));
  }

  Formula polyadic(const Raw& r, Sort expected) {
    auto m = sig_.find(r.name);
    if (!m) throw SignatureError("modality '" + r.name + "' is outside the signature");
    if (m->result != expected) sort_clash(r, m->result, expected);
    auto args = arguments(r, *m);
    return r.kind == Raw::Kind::box ? Formula::dual(m, std::move(args))
                                    : Formula::modal(m, std::move(args));
  }

  std::string_view text_;
  const Signature& sig_;
  SortDeclarations& decls_;
};

RawPtr parse_raw(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace

Formula parse_formula(std::string_view text, Sort expected, const Signature& sig,
                      SortDeclarations* decls) {
  if (expected.index >= sig.sort_count()) throw SortError("expected sort is not in the signature");
  RawPtr raw = parse_raw(text);
  SortDeclarations local = decls ? *decls : SortDeclarations{};
  Formula f = Elaborator(text, sig, local).run(*raw, expected);
  if (decls) *decls = std::move(local);
  return f;
}

Formula parse_formula(std::string_view text, Sort expected) {
  return parse_formula(text, expected, Signature::two_sorted());
}

Formula parse_formula_any_sort(std::string_view text, const Signature& sig, SortDeclarations* decls) {
  RawPtr raw = parse_raw(text);
  std::optional<Formula> found;
  SortDeclarations found_decls;
  std::string last_error;
  for (std::size_t i = 0; i < sig.sort_count(); ++i) {
    SortDeclarations local = decls ? *decls : SortDeclarations{};
    try {
      Formula f = Elaborator(text, sig, local).run(*raw, Sort{static_cast<std::uint8_t>(i)});
      if (found) {
        throw SortError("the sort of '" + std::string(text) +
                        "' is ambiguous; annotate a variable (p:1) or give the sort");
      }
      found = f;
      found_decls = std::move(local);
    } catch (const SortError& e) {
      if (found && std::string(e.what()).find("ambiguous") != std::string::npos) throw;
      last_error = e.what();
    }
  }
  if (!found) throw SortError(last_error);
  if (decls) *decls = std::move(found_decls);
  return *found;
}

namespace {

int precedence(const Formula& f) {
  switch (f.op()) {
    case Connective::iff: return 1;
    case Connective::imp: return 2;
    case Connective::disj: return 3;
    case Connective::conj: return 4;
    case Connective::neg: return 5;
    case Connective::modal:
    case Connective::dual:
      return 5;
    default:
      return 6;
  }
}

bool has_prefix_form(const Formula& f) {
  const Modality& m = *f.modality();
  if (m.arity() != 1) return false;
  if (f.op() == Connective::modal) return is_prefix_keyword(m.name);
  return !m.dual_keyword.empty() && is_prefix_keyword(m.dual_keyword);
}

class Printer {
 public:
  explicit Printer(PrintOptions opts) : opts_(opts) {}

  void print(const Formula& f, std::string& out) const {
    switch (f.op()) {
      case Connective::var:
        out += f.name();
        if (opts_.annotate_sorts) out += ":" + std::to_string(f.sort().index + 1);
        return;
      case Connective::bot: out += "#f"; return;
      case Connective::top: out += "#t"; return;
      case Connective::neg:
        out += "~";
        operand(f.child(0), out);
        return;
      case Connective::conj: binary(f, " & ", false, out); return;
      case Connective::disj: binary(f, " | ", false, out); return;
      case Connective::imp: binary(f, " -> ", true, out); return;
      case Connective::iff: binary(f, " <-> ", false, out); return;
      case Connective::modal:
      case Connective::dual:
        modal(f, out);
        return;
    }
  }

 private:
  void operand(const Formula& c, std::string& out) const {
    if (precedence(c) < 5) {
      out += "(";
      print(c, out);
      out += ")";
    } else {
      print(c, out);
    }
  }

  void binary(const Formula& f, const char* op, bool right_assoc, std::string& out) const {
    const int p = precedence(f);
    const int lp = precedence(f.child(0));
    const int rp = precedence(f.child(1));
    const bool lparen = right_assoc ? lp <= p : lp < p;
    const bool rparen = right_assoc ? rp < p : rp <= p;
    wrap(f.child(0), lparen, out);
    out += op;
    wrap(f.child(1), rparen, out);
  }

  void wrap(const Formula& c, bool paren, std::string& out) const {
    if (paren) out += "(";
    print(c, out);
    if (paren) out += ")";
  }

  void modal(const Formula& f, std::string& out) const {
    const Modality& m = *f.modality();
    if (has_prefix_form(f)) {
      out += f.op() == Connective::modal ? m.name : m.dual_keyword;
      out += " ";
      operand(f.child(0), out);
      return;
    }
    out += f.op() == Connective::modal ? "<" + m.name + ">(" : "[" + m.name + "](";
    for (std::size_t i = 0; i < f.children().size(); ++i) {
      if (i > 0) out += ", ";
      print(f.child(i), out);
    }
    out += ")";
  }

  PrintOptions opts_;
};

}  // namespace

std::string to_string(const Formula& f, PrintOptions options) {
  std::string out;
  Printer(options).print(f, out);
  return out;
}

}  // namespace conlog
