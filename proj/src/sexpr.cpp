#include "gcrisp/sexpr.hpp"

#include <cctype>
#include <sstream>

#include "gcrisp/error.hpp"

namespace gcrisp {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> forms;
    skip_blank();
    while (pos_ < text_.size()) {
      forms.push_back(read_one());
      skip_blank();
    }
    return forms;
  }

 private:
  Sexpr read_one() {
    Sexpr s;
    s.line = line_;
    s.column = column_;
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '(') {
      s.is_list = true;
      advance();
      skip_blank();
      while (true) {
        if (pos_ >= text_.size()) {
          throw ParseError("unterminated list", s.line, s.column);
        }
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        s.items.push_back(read_one());
        skip_blank();
      }
      return s;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) advance();
    s.atom = std::string(text_.substr(start, pos_ - start));
    return s;
  }

  static bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == ';' ||
           std::isspace(static_cast<unsigned char>(c));
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;  // count code points, not UTF-8 continuation bytes
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Sexpr> read_sexprs(std::string_view text) {
  return Reader(text).read_all();
}

std::ostream& operator<<(std::ostream& out, const Sexpr& s) {
  if (!s.is_list) return out << s.atom;
  out << '(';
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i) out << ' ';
    out << s.items[i];
  }
  return out << ')';
}

std::string to_string(const Sexpr& s) {
  std::ostringstream out;
  out << s;
  return out.str();
}

}  // namespace gcrisp
