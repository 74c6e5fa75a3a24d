#include "frobmu/specstring.hpp"

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace frobmu {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw std::invalid_argument("expected '" + std::string(1, c) + "' in spec string");
  }
  std::uint64_t number() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw std::invalid_argument("expected a number in spec string");
    return std::stoull(s.substr(start, i - start));
  }
  std::string word() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(start, i - start);
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

std::vector<std::uint64_t> scalar_list(Cursor& c) {
  c.skip_ws();
  c.expect('[');
  std::vector<std::uint64_t> out;
  c.skip_ws();
  if (c.eat(']')) return out;
  for (;;) {
    out.push_back(c.number());
    c.skip_ws();
    if (c.eat(']')) return out;
    c.expect(',');
  }
}

std::shared_ptr<const Field> parse_field_at(Cursor& c) {
  std::uint64_t p = c.number();
  c.expect('^');
  std::uint64_t m = c.number();
  if (m == 0 || m > 64) throw std::invalid_argument("field degree out of range");
  if (c.i < c.s.size() && c.s[c.i] == '/') {
    c.expect('/');
    std::vector<std::uint64_t> mod = scalar_list(c);
    return Field::make(p, static_cast<unsigned>(m), &mod);
  }
  return Field::make(p, static_cast<unsigned>(m));
}

// One field element: [c0,..] always; for m = 1 the list has one entry.
FieldElement parse_element(Cursor& c, const std::shared_ptr<const Field>& K) {
  return K->element(scalar_list(c));
}

// Polynomial over F_q: [s0,s1,...] scalars for m = 1, [[..],[..]] otherwise.
std::vector<FieldElement> parse_poly(Cursor& c, const std::shared_ptr<const Field>& K) {
  c.skip_ws();
  c.expect('[');
  std::vector<FieldElement> out;
  c.skip_ws();
  if (c.eat(']')) return out;
  for (;;) {
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] == '[') {
      out.push_back(K->element(scalar_list(c)));
    } else {
      out.push_back(K->element({c.number()}));
    }
    c.skip_ws();
    if (c.eat(']')) return out;
    c.expect(',');
  }
}

}  // namespace

std::shared_ptr<const Field> parse_field_spec(const std::string& s) {
  Cursor c{s};
  auto f = parse_field_at(c);
  if (!c.done()) throw std::invalid_argument("trailing characters in field spec");
  return f;
}

CurveSpec parse_curve_spec(const std::string& s) {
  Cursor c{s};
  std::string kind = c.word();
  auto K = parse_field_at(c);
  if (kind == "elliptic") {
    FieldElement a = K->zero(), b = K->zero();
    bool got_a = false, got_b = false;
    while (!c.done()) {
      std::string key = c.word();
      if (key.rfind("a=", 0) == 0) {
        Cursor sub{key};
        sub.i = 2;
        a = parse_element(sub, K);
        got_a = true;
      } else if (key.rfind("b=", 0) == 0) {
        Cursor sub{key};
        sub.i = 2;
        b = parse_element(sub, K);
        got_b = true;
      } else {
        throw std::invalid_argument("unexpected token in elliptic spec: " + key);
      }
    }
    if (!got_a || !got_b) throw std::invalid_argument("elliptic spec needs a=[..] b=[..]");
    return CurveSpec::elliptic(K, std::move(a), std::move(b));
  }
  if (kind == "hyperelliptic") {
    std::string key = c.word();
    if (key.rfind("f=", 0) != 0) throw std::invalid_argument("hyperelliptic spec needs f=[..]");
    Cursor sub{key};
    sub.i = 2;
    std::vector<FieldElement> f = parse_poly(sub, K);
    if (!c.done()) throw std::invalid_argument("trailing characters in curve spec");
    return CurveSpec::hyperelliptic(K, std::move(f));
  }
  throw std::invalid_argument("curve kind must be 'elliptic' or 'hyperelliptic'");
}

}  // namespace frobmu
