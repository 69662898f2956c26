#include "spai/formula.hh"

#include <cctype>
#include <charconv>

#include "spai/error.hh"

namespace spai {

namespace fml {

namespace {
Formula make(FormulaKind k, std::vector<Formula> args) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->args = std::move(args);
  return n;
}
}  // namespace

Formula atom(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::atom;
  n->name = std::move(name);
  return n;
}

Formula placeholder(std::size_t k) {
  if (k == 0) throw UsageError("placeholders are numbered from 1");
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::placeholder;
  n->index = k;
  return n;
}

Formula neg(Formula a) { return make(FormulaKind::negation, {std::move(a)}); }
Formula conj(Formula a, Formula b) {
  return make(FormulaKind::conjunction, {std::move(a), std::move(b)});
}
Formula disj(Formula a, Formula b) {
  return make(FormulaKind::disjunction, {std::move(a), std::move(b)});
}
Formula ex(Formula a) { return make(FormulaKind::ex, {std::move(a)}); }
Formula ax(Formula a) { return make(FormulaKind::ax, {std::move(a)}); }

Formula until(FormulaKind kind, Formula a, Formula b) {
  switch (kind) {
    case FormulaKind::eu:
    case FormulaKind::au:
    case FormulaKind::er:
    case FormulaKind::ar:
      return make(kind, {std::move(a), std::move(b)});
    default:
      throw UsageError("not a binary path operator");
  }
}

Formula ef(std::size_t lo, std::size_t hi, Formula a) {
  if (lo > hi) throw UsageError("EF bounds must satisfy lo <= hi");
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::ef;
  n->lo = lo;
  n->hi = hi;
  n->args = {std::move(a)};
  return n;
}

Formula call(std::string name, std::vector<Formula> args) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::call;
  n->name = std::move(name);
  n->args = std::move(args);
  return n;
}

}  // namespace fml

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
  }

  std::string_view peek_ident() {
    skip_space();
    std::size_t e = pos_;
    if (e < text_.size() && ident_start(text_[e])) {
      while (e < text_.size() && ident_char(text_[e])) ++e;
    }
    return text_.substr(pos_, e - pos_);
  }

  std::size_t number() {
    skip_space();
    std::size_t v = 0;
    const char* b = text_.data() + pos_;
    const char* e = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr == b) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - b);
    return v;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = fml::disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept('&')) f = fml::conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept('!')) return fml::neg(unary());
    const auto id = peek_ident();
    if (id == "EX" || id == "AX") {
      pos_ += id.size();
      Formula a = unary();
      return id == "EX" ? fml::ex(a) : fml::ax(a);
    }
    if (id == "EF") {
      const std::size_t at = pos_;
      pos_ += id.size();
      expect('[');
      const std::size_t lo = number();
      expect(',');
      const std::size_t hi = number();
      expect(']');
      if (lo > hi) {
        pos_ = at;
        fail("EF bounds must satisfy lo <= hi");
      }
      return fml::ef(lo, hi, unary());
    }
    return primary();
  }

  Formula primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Formula f = disjunction();
      expect(')');
      return f;
    }
    if (accept('#')) {
      const std::size_t k = number();
      if (k == 0) fail("placeholders are numbered from 1");
      return fml::placeholder(k);
    }
    const auto id = peek_ident();
    if (id.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    pos_ += id.size();
    FormulaKind until_kind{};
    bool is_until = true;
    if (id == "EU") until_kind = FormulaKind::eu;
    else if (id == "AU") until_kind = FormulaKind::au;
    else if (id == "ER") until_kind = FormulaKind::er;
    else if (id == "AR") until_kind = FormulaKind::ar;
    else is_until = false;
    if (is_until) {
      expect('(');
      Formula a = disjunction();
      expect(',');
      Formula b = disjunction();
      expect(')');
      return fml::until(until_kind, a, b);
    }
    if (accept('(')) {
      std::vector<Formula> args{disjunction()};
      while (accept(',')) args.push_back(disjunction());
      expect(')');
      return fml::call(std::string(id), std::move(args));
    }
    return fml::atom(std::string(id));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// 1 = disjunction, 2 = conjunction, 3 = unary, 4 = primary.
int level(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::disjunction: return 1;
    case FormulaKind::conjunction: return 2;
    case FormulaKind::negation:
    case FormulaKind::ex:
    case FormulaKind::ax:
    case FormulaKind::ef: return 3;
    default: return 4;
  }
}

std::string render(const Formula& f, int min_level) {
  std::string s;
  switch (f->kind) {
    case FormulaKind::atom: s = f->name; break;
    case FormulaKind::placeholder: s = "#" + std::to_string(f->index); break;
    case FormulaKind::negation: s = "!" + render(f->args[0], 3); break;
    case FormulaKind::conjunction:
      s = render(f->args[0], 2) + " & " + render(f->args[1], 3);
      break;
    case FormulaKind::disjunction:
      s = render(f->args[0], 1) + " | " + render(f->args[1], 2);
      break;
    case FormulaKind::ex: s = "EX " + render(f->args[0], 3); break;
    case FormulaKind::ax: s = "AX " + render(f->args[0], 3); break;
    case FormulaKind::ef:
      s = "EF[" + std::to_string(f->lo) + "," + std::to_string(f->hi) + "] " +
          render(f->args[0], 3);
      break;
    case FormulaKind::eu:
    case FormulaKind::au:
    case FormulaKind::er:
    case FormulaKind::ar: {
      const char* name = f->kind == FormulaKind::eu   ? "EU"
                         : f->kind == FormulaKind::au ? "AU"
                         : f->kind == FormulaKind::er ? "ER"
                                                      : "AR";
      s = std::string(name) + "(" + render(f->args[0], 1) + ", " + render(f->args[1], 1) + ")";
      break;
    }
    case FormulaKind::call: {
      s = f->name + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) s += ", ";
        s += render(f->args[i], 1);
      }
      s += ")";
      break;
    }
  }
  return level(f) < min_level ? "(" + s + ")" : s;
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) { return render(f, 1); }

Formula substitute(const Formula& pattern, const std::vector<Formula>& args) {
  if (pattern->kind == FormulaKind::placeholder) {
    if (pattern->index > args.size())
      throw UsageError("placeholder #" + std::to_string(pattern->index) + " is unbound");
    return args[pattern->index - 1];
  }
  if (pattern->args.empty()) return pattern;
  auto n = std::make_shared<FormulaNode>(*pattern);
  for (auto& a : n->args) a = substitute(a, args);
  return n;
}

std::size_t max_placeholder(const Formula& f) {
  std::size_t m = f->kind == FormulaKind::placeholder ? f->index : 0;
  for (const auto& a : f->args) m = std::max(m, max_placeholder(a));
  return m;
}

bool same_formula(const Formula& a, const Formula& b) {
  if (a->kind != b->kind || a->name != b->name || a->index != b->index || a->lo != b->lo ||
      a->hi != b->hi || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!same_formula(a->args[i], b->args[i])) return false;
  return true;
}

}  // namespace spai
