#include "mdk/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace mdk {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok {
  Ident,
  Def,
  Type,
  EvalCmd,
  CheckCmd,
  Colon,
  ColonEq,
  LongArrow,
  Arrow,
  FatArrow,
  Dot,
  LBrack,
  RBrack,
  LParen,
  RParen,
  Comma,
  End,
};

std::string_view describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Def: return "'def'";
    case Tok::Type: return "'Type'";
    case Tok::EvalCmd: return "'#EVAL'";
    case Tok::CheckCmd: return "'#CHECK'";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::LongArrow: return "'-->'";
    case Tok::Arrow: return "'->'";
    case Tok::FatArrow: return "'=>'";
    case Tok::Dot: return "'.'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of file";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  Location loc;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Location here{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", here});
        return out;
      }
      char c = src_[pos_];
      if (ident_char(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        std::string word(src_.substr(start, pos_ - start));
        Tok k = word == "def" ? Tok::Def : word == "Type" ? Tok::Type : Tok::Ident;
        out.push_back({k, std::move(word), here});
        continue;
      }
      if (c == '#') {
        std::size_t start = pos_;
        advance();
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        std::string word(src_.substr(start, pos_ - start));
        if (word == "#EVAL") {
          out.push_back({Tok::EvalCmd, word, here});
        } else if (word == "#CHECK") {
          out.push_back({Tok::CheckCmd, word, here});
        } else {
          throw Error(Category::LexError, "unknown command '" + word + "'", here);
        }
        continue;
      }
      switch (c) {
        case ':':
          advance();
          if (peek() == '=') {
            advance();
            out.push_back({Tok::ColonEq, ":=", here});
          } else {
            out.push_back({Tok::Colon, ":", here});
          }
          continue;
        case '-':
          if (src_.substr(pos_, 3) == "-->") {
            advance(3);
            out.push_back({Tok::LongArrow, "-->", here});
          } else if (src_.substr(pos_, 2) == "->") {
            advance(2);
            out.push_back({Tok::Arrow, "->", here});
          } else {
            throw Error(Category::LexError, "stray '-' (expected '->' or '-->')", here);
          }
          continue;
        case '=':
          if (src_.substr(pos_, 2) != "=>") throw Error(Category::LexError, "stray '=' (expected '=>')", here);
          advance(2);
          out.push_back({Tok::FatArrow, "=>", here});
          continue;
        case '.': advance(); out.push_back({Tok::Dot, ".", here}); continue;
        case '[': advance(); out.push_back({Tok::LBrack, "[", here}); continue;
        case ']': advance(); out.push_back({Tok::RBrack, "]", here}); continue;
        case '(': advance(); out.push_back({Tok::LParen, "(", here}); continue;
        case ')': advance(); out.push_back({Tok::RParen, ")", here}); continue;
        case ',': advance(); out.push_back({Tok::Comma, ",", here}); continue;
        default: break;
      }
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c)
                                                                       : "\\x" + hex(static_cast<unsigned char>(c));
      throw Error(Category::LexError, "unexpected character '" + shown + "'", here);
    }
  }

 private:
  static std::string hex(unsigned char c) {
    static const char* digits = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 15]};
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (peek() == '(' && peek(1) == ';') {
        skip_comment();
        continue;
      }
      return;
    }
  }

  // "(;" ... ";)", nestable.
  void skip_comment() {
    Location open{line_, col_};
    int depth = 0;
    do {
      if (pos_ >= src_.size()) throw Error(Category::LexError, "unterminated comment", open);
      if (peek() == '(' && peek(1) == ';') {
        ++depth;
        advance(2);
      } else if (peek() == ';' && peek(1) == ')') {
        --depth;
        advance(2);
      } else {
        advance();
      }
    } while (depth > 0);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, SourceFile& out) : toks_(std::move(toks)), out_(out) {}

  void file() {
    while (cur().kind != Tok::End) out_.entries.push_back(entry());
  }

  Term single_term() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }

  const Token& expect(Tok k) {
    if (cur().kind != k) fail("expected " + std::string(describe(k)));
    return toks_[pos_++];
  }

  bool accept(Tok k) {
    if (cur().kind != k) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::string found = cur().kind == Tok::Ident ? "identifier '" + cur().text + "'" : std::string(describe(cur().kind));
    throw Error(Category::ParseError, what + ", found " + found, cur().loc);
  }

  Term located(Term t, Location loc) {
    out_.term_locations.emplace(t.id(), loc);
    return t;
  }

  std::string declared_name() {
    const Token& t = expect(Tok::Ident);
    return t.text;
  }

  Entry entry() {
    Location loc = cur().loc;
    switch (cur().kind) {
      case Tok::Ident: {
        std::string name = declared_name();
        expect(Tok::Colon);
        Term type = term();
        expect(Tok::Dot);
        return {entry::StaticDecl{std::move(name), std::move(type)}, loc};
      }
      case Tok::Def: {
        ++pos_;
        std::string name = declared_name();
        std::optional<Term> type;
        if (accept(Tok::Colon)) {
          type = term();
          if (accept(Tok::Dot)) return {entry::DefinableDecl{std::move(name), std::move(*type)}, loc};
        }
        expect(Tok::ColonEq);
        Term body = term();
        expect(Tok::Dot);
        return {entry::Definition{std::move(name), std::move(type), std::move(body)}, loc};
      }
      case Tok::LBrack: return rule(loc);
      case Tok::EvalCmd: {
        ++pos_;
        Term t = term();
        expect(Tok::Dot);
        return {entry::Eval{std::move(t)}, loc};
      }
      case Tok::CheckCmd: {
        ++pos_;
        Term t = term();
        expect(Tok::Colon);
        Term ty = term();
        expect(Tok::Dot);
        return {entry::Check{std::move(t), std::move(ty)}, loc};
      }
      default: fail("expected a declaration, definition, rule or command");
    }
  }

  Entry rule(Location loc) {
    expect(Tok::LBrack);
    entry::Rule r;
    if (cur().kind != Tok::RBrack) {
      do {
        Location vloc = cur().loc;
        std::string name = declared_name();
        if (rule_vars_.count(name)) throw Error(Category::ParseError, "duplicate rule variable '" + name + "'", vloc);
        expect(Tok::Colon);
        Term ty = term();
        rule_vars_.insert(name);
        r.context.emplace_back(std::move(name), std::move(ty));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBrack);
    r.lhs = term();
    expect(Tok::LongArrow);
    r.rhs = term();
    expect(Tok::Dot);
    rule_vars_.clear();
    return {std::move(r), loc};
  }

  Term term() { return lamterm(); }

  Term lamterm() {
    if (cur().kind == Tok::Ident) {
      Location loc = cur().loc;
      if (ahead(1).kind == Tok::FatArrow) {
        std::string x = cur().text;
        pos_ += 2;
        Term body = under(x, [&] { return lamterm(); });
        return located(Term::lam(x, std::nullopt, body), loc);
      }
      if (ahead(1).kind == Tok::Colon) {
        // "x : A => t" or a plain term followed by ':' (as in #CHECK t : T).
        std::size_t save = pos_;
        std::string x = cur().text;
        pos_ += 2;
        if (starts_atom(cur().kind)) {
          Term ann = appterm();
          if (accept(Tok::FatArrow)) {
            Term body = under(x, [&] { return lamterm(); });
            return located(Term::lam(x, ann, body), loc);
          }
        }
        pos_ = save;
      }
    }
    return piterm();
  }

  Term piterm() {
    Location loc = cur().loc;
    if (cur().kind == Tok::LParen && ahead(1).kind == Tok::Ident && ahead(2).kind == Tok::Colon &&
        closes_before_arrow()) {
      ++pos_;
      std::string x = declared_name();
      expect(Tok::Colon);
      Term dom = term();
      expect(Tok::RParen);
      expect(Tok::Arrow);
      Term cod = under(x, [&] { return piterm(); });
      return located(Term::pi(x, dom, cod), loc);
    }
    Term a = appterm();
    if (accept(Tok::Arrow)) {
      Term cod = under("", [&] { return piterm(); });
      return located(Term::pi("_", a, cod), loc);
    }
    return a;
  }

  // At "(": is the matching ")" immediately followed by "->"?
  bool closes_before_arrow() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      Tok k = toks_[i].kind;
      if (k == Tok::LParen) ++depth;
      if (k == Tok::RParen && --depth == 0) return i + 1 < toks_.size() && toks_[i + 1].kind == Tok::Arrow;
      if (k == Tok::Dot || k == Tok::End) return false;
    }
    return false;
  }

  static bool starts_atom(Tok k) { return k == Tok::Type || k == Tok::Ident || k == Tok::LParen; }

  Term appterm() {
    Location loc = cur().loc;
    Term t = atom();
    while (starts_atom(cur().kind)) t = located(Term::app(t, atom()), loc);
    return t;
  }

  Term atom() {
    Location loc = cur().loc;
    switch (cur().kind) {
      case Tok::Type: ++pos_; return located(Term::type(), loc);
      case Tok::Ident: {
        std::string x = toks_[pos_++].text;
        return located(resolve(x), loc);
      }
      case Tok::LParen: {
        ++pos_;
        Term t = term();
        expect(Tok::RParen);
        return t;
      }
      default: fail("expected a term");
    }
  }

  Term resolve(const std::string& x) const {
    for (std::size_t i = bound_.size(); i-- > 0;) {
      if (bound_[i] == x) return Term::bvar(static_cast<std::uint32_t>(bound_.size() - 1 - i));
    }
    if (rule_vars_.count(x)) return Term::constant(pattern_var_name(x));
    return Term::constant(x);
  }

  template <typename F>
  Term under(const std::string& x, F&& f) {
    bound_.push_back(x);
    Term t = f();
    bound_.pop_back();
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SourceFile& out_;
  std::vector<std::string> bound_;
  std::unordered_set<std::string> rule_vars_;
};

// ---------------------------------------------------------------------------
// Printer

enum class Prec { Term = 0, Pi = 1, App = 2, Atom = 3 };

std::string display_const(const std::string& name) {
  return !name.empty() && name[0] == kPatternVarPrefix ? name.substr(1) : name;
}

class Printer {
 public:
  explicit Printer(std::vector<std::string> names) : names_(std::move(names)) {}

  std::string print(const Term& t, Prec prec) {
    switch (t.tag()) {
      case Term::Tag::Type: return "Type";
      case Term::Tag::Kind: return "Kind";
      case Term::Tag::Const: return display_const(t.name());
      case Term::Tag::BVar:
        if (t.index() < names_.size()) return names_[names_.size() - 1 - t.index()];
        return "_" + std::to_string(t.index());
      case Term::Tag::App: {
        auto [h, args] = spine(t);
        std::string s = print(h, Prec::Atom);
        for (const auto& a : args) s += " " + print(a, Prec::Atom);
        return wrap(s, prec > Prec::App);
      }
      case Term::Tag::Lam: {
        std::string x = fresh(t.name(), t.body());
        std::string s = x;
        if (auto ann = t.annotation()) s += " : " + print(*ann, Prec::App);
        names_.push_back(x);
        s += " => " + print(t.body(), Prec::Term);
        names_.pop_back();
        return wrap(s, prec > Prec::Term);
      }
      case Term::Tag::Pi: {
        std::string s;
        if (occurs(t.codomain(), 0)) {
          std::string x = fresh(t.name(), t.codomain());
          s = "(" + x + " : " + print(t.domain(), Prec::Term) + ") -> ";
          names_.push_back(x);
        } else {
          // "(x : A => t) -> B" would read back as a dependent product.
          bool ambiguous = t.domain().is(Term::Tag::Lam) && t.domain().annotation();
          s = wrap(print(t.domain(), Prec::App), ambiguous) + " -> ";
          names_.push_back("");
        }
        s += print(t.codomain(), Prec::Pi);
        names_.pop_back();
        return wrap(s, prec > Prec::Pi);
      }
    }
    return "?";
  }

 private:
  static std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

  // A binder name that neither shadows a name in scope nor captures a
  // constant occurring in the binder's body.
  std::string fresh(const std::string& hint, const Term& body) {
    std::set<std::string> consts;
    collect_constants(body, consts);
    std::set<std::string> taken;
    for (const auto& c : consts) taken.insert(display_const(c));
    taken.insert(names_.begin(), names_.end());
    std::string base = is_identifier(hint) && hint != "_" ? hint : "x";
    if (!taken.count(base)) return base;
    for (int i = 1;; ++i) {
      std::string candidate = base + std::to_string(i);
      if (!taken.count(candidate)) return candidate;
    }
  }

  std::vector<std::string> names_;
};

}  // namespace

std::optional<Location> SourceFile::location_of(const Term& t) const {
  if (t.null()) return std::nullopt;
  auto it = term_locations.find(t.id());
  if (it == term_locations.end()) return std::nullopt;
  return it->second;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || s == "def" || s == "Type") return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

SourceFile parse_file(std::string_view text) {
  SourceFile out;
  Parser p(Lexer(text).run(), out);
  p.file();
  return out;
}

Term parse_term(std::string_view text) {
  SourceFile scratch;
  return parse_term(text, scratch);
}

Term parse_term(std::string_view text, SourceFile& locations) {
  Parser p(Lexer(text).run(), locations);
  return p.single_term();
}

std::string print_term(const Term& t, const std::vector<std::string>& ctx) {
  return Printer(ctx).print(t, Prec::Term);
}

std::string print_term(const Term& t, const Context& ctx) { return print_term(t, ctx.names()); }

namespace {

struct EntryPrinter {
  std::string operator()(const entry::StaticDecl& d) const { return d.name + " : " + print_term(d.type) + "."; }
  std::string operator()(const entry::DefinableDecl& d) const {
    return "def " + d.name + " : " + print_term(d.type) + ".";
  }
  std::string operator()(const entry::Definition& d) const {
    std::string s = "def " + d.name;
    if (d.type) s += " : " + print_term(*d.type);
    return s + " := " + print_term(d.body) + ".";
  }
  std::string operator()(const entry::Rule& r) const {
    std::string s = "[";
    for (std::size_t i = 0; i < r.context.size(); ++i) {
      if (i) s += ", ";
      s += display_const(r.context[i].first) + " : " + print_term(r.context[i].second);
    }
    return s + "] " + print_term(r.lhs) + " --> " + print_term(r.rhs) + ".";
  }
  std::string operator()(const entry::Eval& e) const { return "#EVAL " + print_term(e.term) + "."; }
  std::string operator()(const entry::Check& c) const {
    // Keep a lambda subject from swallowing the ':' of the command.
    std::string subject = print_term(c.term);
    if (c.term.is(Term::Tag::Lam)) subject = "(" + subject + ")";
    return "#CHECK " + subject + " : " + print_term(c.type) + ".";
  }
};

}  // namespace

std::string print_entry(const Entry& e) { return std::visit(EntryPrinter{}, e.body); }

std::string print_file(const SourceFile& f) {
  std::string out;
  for (const auto& e : f.entries) out += print_entry(e) + "\n";
  return out;
}

}  // namespace mdk
