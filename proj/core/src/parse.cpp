#include "cmseq/parse.hpp"

#include <string>

#include "cmseq/errors.hpp"

namespace cmseq {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Longest run matching the rational literal alphabet; validated by rat_from_string.
  Rational rational() {
    const std::size_t begin = pos_;
    if (peek() == '-') ++pos_;
    while (!done() && ((peek() >= '0' && peek() <= '9') || peek() == '.' || peek() == '/')) ++pos_;
    if (pos_ == begin) fail("expected a rational number");
    try {
      return rat_from_string(text_.substr(begin, pos_ - begin));
    } catch (const InputError& e) {
      throw ParseError(e.what(), begin);
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    if (done()) throw ParseError(what + ", found end of input", pos_);
    throw ParseError(what + ", found '" + std::string(1, text_[pos_]) + "'", pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Rational> parse_factored_poly(std::string_view text) {
  Cursor cur(text);
  cur.skip_ws();
  if (cur.done()) throw ParseError("empty polynomial", 0);
  std::vector<Rational> shifts;
  while (!cur.done()) {
    cur.expect('(');
    cur.skip_ws();
    cur.expect('x');
    cur.skip_ws();
    const char sign = cur.peek();
    if (sign != '+' && sign != '-') cur.fail("expected '+' or '-'");
    cur.expect(sign);
    cur.skip_ws();
    Rational a = cur.rational();
    cur.skip_ws();
    cur.expect(')');
    cur.skip_ws();
    shifts.push_back(sign == '+' ? a : -a);
  }
  return shifts;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  Cursor cur(text);
  std::vector<Rational> out;
  cur.skip_ws();
  if (cur.done()) throw ParseError("empty list", 0);
  while (true) {
    out.push_back(cur.rational());
    cur.skip_ws();
    if (cur.done()) break;
    cur.expect(',');
    cur.skip_ws();
  }
  return out;
}

}  // namespace cmseq
