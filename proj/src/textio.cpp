#include "ekrlab/textio.hpp"

#include <cctype>
#include <istream>
#include <sstream>

#include "ekrlab/error.hpp"

namespace ekrlab {
namespace {

// Minimal cursor over a flattened (whitespace-free) copy of the input.
struct Cursor {
  std::string s;
  std::size_t pos = 0;

  explicit Cursor(const std::string& raw) {
    s.reserve(raw.size());
    for (char c : raw)
      if (!std::isspace((unsigned char)c)) s.push_back(c);
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  void expect(char c) {
    if (peek() != c) {
      std::ostringstream msg;
      msg << "expected '" << c << "' at position " << pos << " in \"" << s << "\"";
      throw Error(Errc::ParseError, msg.str());
    }
    ++pos;
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::uint64_t number() {
    if (!std::isdigit((unsigned char)peek())) {
      std::ostringstream msg;
      msg << "expected a number at position " << pos << " in \"" << s << "\"";
      throw Error(Errc::ParseError, msg.str());
    }
    std::uint64_t v = 0;
    while (std::isdigit((unsigned char)peek())) {
      v = v * 10 + (std::uint64_t)(s[pos] - '0');
      if (v > (1ULL << 32)) throw Error(Errc::ParseError, "number out of range");
      ++pos;
    }
    return v;
  }
  void expect_end() {
    if (!done()) {
      std::ostringstream msg;
      msg << "trailing characters at position " << pos << " in \"" << s << "\"";
      throw Error(Errc::ParseError, msg.str());
    }
  }
};

Fe element_of(const Field& F, std::uint64_t idx, const Cursor& cur) {
  if (idx >= F.q()) {
    std::ostringstream msg;
    msg << "element index " << idx << " out of range for a field of order " << F.q() << " in \""
        << cur.s << "\"";
    throw Error(Errc::ParseError, msg.str());
  }
  return F.element((std::uint32_t)idx);
}

Vec parse_vec_at(const Field& F, Cursor& cur, int n) {
  Vec v;
  v.n = n;
  cur.expect('[');
  for (int i = 0; i < n; ++i) {
    if (i) cur.expect(',');
    v.c[(std::size_t)i] = element_of(F, cur.number(), cur);
  }
  cur.expect(']');
  return v;
}

Mat parse_mat_at(const Field& F, Cursor& cur, int n) {
  Mat m;
  m.n = n;
  cur.expect('[');
  for (int i = 0; i < n; ++i) {
    if (i) cur.expect(',');
    cur.expect('[');
    for (int j = 0; j < n; ++j) {
      if (j) cur.expect(',');
      m.at(i, j) = element_of(F, cur.number(), cur);
    }
    cur.expect(']');
  }
  cur.expect(']');
  return m;
}

}  // namespace

std::string format_field(const Field& F) {
  std::ostringstream out;
  out << "GF(" << F.p();
  if (F.k() > 1) {
    out << "^" << F.k() << ";";
    const auto& mod = F.modulus();
    for (std::size_t i = 0; i < mod.size(); ++i) {
      if (i) out << ",";
      out << mod[i];
    }
  }
  out << ")";
  return out.str();
}

Field parse_field(const std::string& s) {
  Cursor cur(s);
  for (const char* c = "GF("; *c; ++c) cur.expect(*c);
  std::uint64_t p = cur.number();
  std::uint32_t k = 1;
  std::vector<std::uint32_t> modulus;
  bool have_modulus = false;
  if (cur.accept('^')) {
    k = (std::uint32_t)cur.number();
    if (cur.accept(';')) {
      have_modulus = true;
      modulus.push_back((std::uint32_t)cur.number());
      while (cur.accept(',')) modulus.push_back((std::uint32_t)cur.number());
    }
  }
  cur.expect(')');
  cur.expect_end();
  if (have_modulus) return Field::make((std::uint32_t)p, k, modulus);
  return Field::make((std::uint32_t)p, k);
}

std::string format_vec(const Field& F, const Vec& v) {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < v.n; ++i) {
    if (i) out << ",";
    out << v.c[(std::size_t)i].idx;
  }
  out << "]";
  (void)F;
  return out.str();
}

Vec parse_vec(const Field& F, const std::string& s, int n) {
  Cursor cur(s);
  Vec v = parse_vec_at(F, cur, n);
  cur.expect_end();
  return v;
}

std::string format_mat(const Field& F, const Mat& m) {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < m.n; ++i) {
    if (i) out << ",";
    out << "[";
    for (int j = 0; j < m.n; ++j) {
      if (j) out << ",";
      out << m.at(i, j).idx;
    }
    out << "]";
  }
  out << "]";
  (void)F;
  return out.str();
}

Mat parse_mat(const Field& F, const std::string& s, int n) {
  Cursor cur(s);
  Mat m = parse_mat_at(F, cur, n);
  cur.expect_end();
  return m;
}

std::string format_proj_line(const Field& F, const ProjLine& l) {
  return "<" + format_vec(F, l.dir) + ">";
}

std::string format_aff_line(const Field& F, const AffLine& l) {
  return format_vec(F, l.offset) + "+<" + format_vec(F, l.dir.dir) + ">";
}

std::vector<Mat> parse_mat_list(const Field& F, const std::string& s, int n) {
  Cursor cur(s);
  std::vector<Mat> out;
  out.push_back(parse_mat_at(F, cur, n));
  while (cur.accept(';')) {
    if (cur.done()) break;  // tolerate a trailing separator
    out.push_back(parse_mat_at(F, cur, n));
  }
  cur.expect_end();
  if (out.empty()) throw Error(Errc::ParseError, "empty matrix list");
  return out;
}

std::vector<Mat> parse_mat_stream(const Field& F, std::istream& in, int n) {
  std::vector<Mat> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed;
    for (char c : line)
      if (!std::isspace((unsigned char)c)) trimmed.push_back(c);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    try {
      out.push_back(parse_mat(F, trimmed, n));
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "line " << lineno << ": " << e.what();
      throw Error(Errc::ParseError, msg.str());
    }
  }
  return out;
}

}  // namespace ekrlab
