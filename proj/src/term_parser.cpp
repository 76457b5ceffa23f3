#include <cctype>
#include <optional>

#include "odf/error.hpp"
#include "odf/term.hpp"

namespace odf {

namespace {

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Recursive-descent parser over the raw text. Positions are byte offsets;
// errors convert them to line/column.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TermPtr term() { return sum(); }

  FormulaPtr formula() { return disjunction(); }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg + " at " + std::to_string(line) + ":" + std::to_string(col), line, col);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t natural() {
    skip_space();
    std::size_t at = pos_;
    std::string d = digits();
    if (d.empty()) fail("expected a natural number");
    if (pos_ < text_.size() && text_[pos_] == '/' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1]))
      fail_at(at, "expected a natural number, not a fraction");
    if (d.size() > 9) fail_at(at, "number too large");
    return static_cast<std::uint32_t>(std::stoul(d));
  }

  TermPtr sum() {
    TermPtr t = product();
    while (true) {
      if (accept("+")) {
        t = term_add(t, product());
      } else if (peek() == '-') {
        ++pos_;
        t = term_sub(t, product());
      } else {
        return t;
      }
    }
  }

  TermPtr product() {
    TermPtr t = unary();
    while (true) {
      if (accept("*")) {
        t = term_mul(t, unary());
      } else if (accept("/")) {
        t = term_div(t, unary());
      } else {
        return t;
      }
    }
  }

  TermPtr unary() {
    if (accept("-")) return term_neg(unary());
    return power();
  }

  TermPtr power() {
    TermPtr base = atom();
    if (accept("^")) return term_pow(base, natural());
    return base;
  }

  TermPtr atom() {
    char c = peek();
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      TermPtr t = term();
      expect(")");
      return t;
    }
    if (is_digit(c)) {
      std::string num = digits();
      // A rational literal needs the slash and denominator attached.
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' && is_digit(text_[pos_ + 1])) {
        ++pos_;
        std::string den = digits();
        if (Integer(den) == 0) fail_at(at, "zero denominator in literal");
        Rational q(num + "/" + den);
        q.canonicalize();
        return term_const(q);
      }
      return term_const(Rational(num));
    }
    if (is_letter(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (is_letter(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "exists" || name == "forall")
        throw Error(ErrorCode::QuantifierUnsupported, "quantifiers are not supported ('" + name + "')");
      if (auto index = derivative_index(name)) {
        std::size_t after = pos_;
        if (peek() == '(') {
          ++pos_;
          TermPtr inner = term();
          expect(")");
          return term_apply(*index, inner);
        }
        pos_ = after;
      }
      return term_var(Var(name, jet_suffix()));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  static std::optional<std::size_t> derivative_index(const std::string& name) {
    if (name.empty() || name[0] != 'd') return std::nullopt;
    if (name.size() == 1) return 1;
    for (std::size_t k = 1; k < name.size(); ++k)
      if (!is_digit(name[k])) return std::nullopt;
    if (name.size() > 6) return std::nullopt;
    std::size_t i = std::stoul(name.substr(1));
    if (i == 0) return std::nullopt;
    return i;
  }

  // Primes (x', x'') or a bracketed jet (x[2], y[1,0]) attached to a name.
  std::vector<std::uint32_t> jet_suffix() {
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      std::uint32_t n = 0;
      while (pos_ < text_.size() && text_[pos_] == '\'') {
        ++pos_;
        ++n;
      }
      return {n};
    }
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      std::vector<std::uint32_t> jet;
      do {
        jet.push_back(natural());
      } while (accept(","));
      expect("]");
      return jet;
    }
    return {};
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (accept("|")) f = formula_or(f, conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = negation();
    while (accept("&")) f = formula_and(f, negation());
    return f;
  }

  FormulaPtr negation() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '!' && (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '=')) {
      ++pos_;
      return formula_not(negation());
    }
    if (peek() == '(') {
      // Either a parenthesized formula or a term starting with '('.
      std::size_t save = pos_;
      try {
        ++pos_;
        FormulaPtr f = formula();
        expect(")");
        return f;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return atom_formula();
  }

  FormulaPtr atom_formula() {
    TermPtr lhs = term();
    Comparator cmp;
    if (accept("<=")) {
      cmp = Comparator::Le;
    } else if (accept(">=")) {
      cmp = Comparator::Ge;
    } else if (accept("!=")) {
      cmp = Comparator::Ne;
    } else if (accept("<")) {
      cmp = Comparator::Lt;
    } else if (accept(">")) {
      cmp = Comparator::Gt;
    } else if (accept("=")) {
      cmp = Comparator::Eq;
    } else {
      fail("expected a comparison");
    }
    return formula_atom(lhs, cmp, term());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(std::string_view text) {
  Parser p(text);
  TermPtr t = p.term();
  p.expect_end();
  return t;
}

FormulaPtr parse_formula(std::string_view text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.expect_end();
  return f;
}

bool looks_like_formula(std::string_view text) {
  return text.find_first_of("=<>&|!") != std::string_view::npos;
}

}  // namespace odf
