#pragma once

// Line-oriented input format:
//
//   # comment
//   vertices: 1 2 3
//   arrow a: 1 -> 2
//   field: Fp 32003        (or "field: Q"; default is Fp with $BQ_PRIME or 32003)
//   relation: a*b - 2*c*d
//   option degree_bound: 30
//   option max_period: 8
//   option assume_period4: true
//
// Relation expressions use +, -, scalar literals (integers, a/b fractions),
// '*' or whitespace for path composition (left to right), parentheses and
// integer powers x^k.

#include "bq/algebra.hpp"
#include "bq/field.hpp"
#include "bq/path.hpp"
#include "bq/quiver.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bq {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Semantic };
  ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                           (kind == Kind::Syntax ? "syntax error: " : "semantic error: ") + msg),
        kind_(kind),
        line_(line),
        column_(column) {}
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_, column_;
};

struct FieldSpec {
  enum class Kind { Prime, Rational };
  Kind kind = Kind::Prime;
  std::uint32_t prime = kDefaultPrime;
  bool operator==(const FieldSpec&) const = default;
};

/// Default prime from $BQ_PRIME, else 32003.
inline std::uint32_t default_prime() {
  if (const char* env = std::getenv("BQ_PRIME")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 1 && v < (1ul << 31) && is_prime(v)) return static_cast<std::uint32_t>(v);
    throw std::invalid_argument(std::string("BQ_PRIME is not a prime below 2^31: ") + env);
  }
  return kDefaultPrime;
}

struct InputDocument {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::optional<FieldSpec> field;
  /// Relations with rational coefficients; converted to the working field on build.
  std::vector<AlgebraElement<RationalField>> relations;
  std::optional<std::size_t> degree_bound;
  std::optional<std::size_t> max_period;
  bool assume_period4 = false;

  bool has_relations() const { return !relations.empty(); }
  FieldSpec resolved_field() const { return field.value_or(FieldSpec{FieldSpec::Kind::Prime, default_prime()}); }
  Quiver quiver() const { return Quiver(vertices.size(), arrows, vertices); }

  bool operator==(const InputDocument&) const = default;
};

/// Relations of the document over the field F.
template <ExactField F>
std::vector<AlgebraElement<F>> convert_relations(const InputDocument& doc, const F& f) {
  std::vector<AlgebraElement<F>> out;
  for (const auto& r : doc.relations) {
    AlgebraElement<F> e(r.source(), r.target());
    for (const auto& [p, c] : r.terms()) {
      if constexpr (std::is_same_v<F, RationalField>) {
        e.add_term(f, p, c);
      } else {
        const auto num = boost::multiprecision::numerator(c);
        const auto den = boost::multiprecision::denominator(c);
        const std::int64_t P = f.characteristic();
        const auto n = static_cast<std::int64_t>(boost::multiprecision::cpp_int(num % P));
        const auto d = static_cast<std::int64_t>(boost::multiprecision::cpp_int(den % P));
        if (d == 0)
          throw std::invalid_argument("coefficient " + c.str() + " has a denominator divisible by " +
                                      std::to_string(P));
        e.add_term(f, p, f.div(f.from_int(n), f.from_int(d)));
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace detail {

class ExpressionParser {
 public:
  using Q = RationalField;
  using Scalar = Q::value_type;
  using Elem = AlgebraElement<Q>;
  using Value = std::variant<Scalar, Elem>;

  ExpressionParser(const Quiver& q, const std::string& text, std::size_t line, std::size_t col0)
      : q_(q), s_(text), line_(line), col0_(col0) {}

  Elem parse_relation() {
    skip();
    if (pos_ == s_.size()) fail_syntax("empty relation");
    const std::size_t start = pos_;
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail_syntax("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (std::holds_alternative<Scalar>(v))
      throw ParseError(ParseError::Kind::Semantic, line_, col0_ + start, "relation '" + s_ + "' is a scalar");
    return std::get<Elem>(v);
  }

 private:
  [[noreturn]] void fail_syntax(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, line_, col0_ + pos_, msg);
  }
  [[noreturn]] void fail_semantic(std::size_t at, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Semantic, line_, col0_ + at, msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Value expr() {
    const std::size_t start = pos_;
    Value acc;
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Value t = term();
      if (sign < 0) t = negate(t);
      acc = first ? t : add(acc, t, start);
      first = false;
    }
    return acc;
  }

  Value term() {
    const std::size_t start = pos_;
    Value acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = mul(acc, power(), start);
      } else if (peek('/')) {
        ++pos_;
        const std::size_t at = pos_;
        Value d = power();
        if (!std::holds_alternative<Scalar>(d)) fail_semantic(at, "division by a path");
        if (std::get<Scalar>(d) == 0) fail_semantic(at, "division by zero");
        acc = mul(acc, Value{Scalar(1) / std::get<Scalar>(d)}, start);
      } else if (starts_primary()) {
        acc = mul(acc, power(), start);
      } else {
        break;
      }
    }
    return acc;
  }

  Value power() {
    const std::size_t start = pos_;
    Value base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t at = pos_;
      std::size_t k = 0;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail_syntax("expected exponent");
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) k = k * 10 + (s_[pos_++] - '0');
      if (k == 0) fail_semantic(at, "exponent must be positive");
      Value r = base;
      for (std::size_t i = 1; i < k; ++i) r = mul(r, base, start);
      return r;
    }
    return base;
  }

  Value primary() {
    skip();
    if (pos_ >= s_.size()) fail_syntax("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!peek(')')) fail_syntax("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
      return Value{Scalar(boost::multiprecision::cpp_int(digits))};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        name += s_[pos_++];
      auto a = q_.find_arrow(name);
      if (!a) fail_semantic(at, "unknown arrow '" + name + "'");
      return Value{Elem::from_path(f_, PathWord::of_arrow(q_, *a))};
    }
    fail_syntax("unexpected '" + std::string(1, c) + "'");
  }

  Value negate(const Value& v) {
    if (auto* s = std::get_if<Scalar>(&v)) return Value{Scalar(-*s)};
    return Value{std::get<Elem>(v).scaled(f_, Scalar(-1))};
  }

  Value add(const Value& a, const Value& b, std::size_t at) {
    if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b))
      return Value{Scalar(std::get<Scalar>(a) + std::get<Scalar>(b))};
    if (std::holds_alternative<Scalar>(a) || std::holds_alternative<Scalar>(b))
      fail_semantic(at, "a scalar cannot be added to a path in '" + s_ + "'");
    Elem x = std::get<Elem>(a);
    const Elem& y = std::get<Elem>(b);
    if (x.source() != y.source() || x.target() != y.target())
      fail_semantic(at, "terms of '" + s_ + "' are not parallel");
    x.add_scaled(f_, y, Scalar(1));
    return Value{std::move(x)};
  }

  Value mul(const Value& a, const Value& b, std::size_t at) {
    const auto* sa = std::get_if<Scalar>(&a);
    const auto* sb = std::get_if<Scalar>(&b);
    if (sa && sb) return Value{Scalar(*sa * *sb)};
    if (sa) return Value{std::get<Elem>(b).scaled(f_, *sa)};
    if (sb) return Value{std::get<Elem>(a).scaled(f_, *sb)};
    const Elem& x = std::get<Elem>(a);
    const Elem& y = std::get<Elem>(b);
    if (x.target() != y.source())
      fail_semantic(at, "paths in '" + s_ + "' do not compose (" + q_.vertex_name(x.target()) +
                            " != " + q_.vertex_name(y.source()) + ")");
    return Value{path_product(f_, x, y)};
  }

  const Quiver& q_;
  const std::string& s_;
  std::size_t line_, col0_;
  std::size_t pos_ = 0;
  Q f_;
};

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

inline std::size_t parse_count(const std::string& v, std::size_t line, std::size_t col, const char* what) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 9)
    throw ParseError(ParseError::Kind::Syntax, line, col, std::string("expected a count for ") + what);
  return std::stoul(v);
}

}  // namespace detail

inline InputDocument parse_document(const std::string& text) {
  InputDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  struct PendingRelation {
    std::string text;
    std::size_t line, col;
  };
  std::vector<PendingRelation> pending;
  bool have_vertices = false;

  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    if (detail::trim(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(ParseError::Kind::Syntax, lineno, 1, "expected 'keyword: value'");
    const std::string key = detail::trim(line.substr(0, colon));
    const std::string value = line.substr(colon + 1);
    const std::size_t vcol = colon + 2;
    const auto words = detail::split_ws(key);

    if (key == "vertices") {
      if (have_vertices) throw ParseError(ParseError::Kind::Semantic, lineno, 1, "vertices declared twice");
      have_vertices = true;
      doc.vertices = detail::split_ws(value);
      if (doc.vertices.empty()) throw ParseError(ParseError::Kind::Syntax, lineno, vcol, "no vertices listed");
      for (std::size_t i = 0; i < doc.vertices.size(); ++i) {
        if (!detail::valid_name(doc.vertices[i]))
          throw ParseError(ParseError::Kind::Syntax, lineno, vcol, "bad vertex name '" + doc.vertices[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
          if (doc.vertices[i] == doc.vertices[j])
            throw ParseError(ParseError::Kind::Semantic, lineno, vcol, "duplicate vertex '" + doc.vertices[i] + "'");
      }
    } else if (words.size() == 2 && words[0] == "arrow") {
      if (!have_vertices) throw ParseError(ParseError::Kind::Semantic, lineno, 1, "arrow before vertices");
      const std::string& name = words[1];
      if (!detail::valid_name(name))
        throw ParseError(ParseError::Kind::Syntax, lineno, 7, "bad arrow name '" + name + "'");
      for (const auto& a : doc.arrows)
        if (a.name == name) throw ParseError(ParseError::Kind::Semantic, lineno, 7, "duplicate arrow '" + name + "'");
      const auto arrow = value.find("->");
      if (arrow == std::string::npos) throw ParseError(ParseError::Kind::Syntax, lineno, vcol, "expected 'u -> v'");
      const std::string u = detail::trim(value.substr(0, arrow)), v = detail::trim(value.substr(arrow + 2));
      auto idx = [&](const std::string& s) -> VertexId {
        for (std::size_t k = 0; k < doc.vertices.size(); ++k)
          if (doc.vertices[k] == s) return k;
        throw ParseError(ParseError::Kind::Semantic, lineno, vcol, "unknown vertex '" + s + "'");
      };
      doc.arrows.push_back(Arrow{name, idx(u), idx(v)});
    } else if (key == "field") {
      const auto w = detail::split_ws(value);
      if (w.size() == 1 && w[0] == "Q") {
        doc.field = FieldSpec{FieldSpec::Kind::Rational, 0};
      } else if (!w.empty() && w[0] == "Fp" && w.size() <= 2) {
        std::uint32_t p = default_prime();
        if (w.size() == 2) {
          const auto n = detail::parse_count(w[1], lineno, vcol, "the prime");
          if (!is_prime(n) || n >= (1ul << 31))
            throw ParseError(ParseError::Kind::Semantic, lineno, vcol, w[1] + " is not a prime below 2^31");
          p = static_cast<std::uint32_t>(n);
        }
        doc.field = FieldSpec{FieldSpec::Kind::Prime, p};
      } else {
        throw ParseError(ParseError::Kind::Syntax, lineno, vcol, "expected 'Fp <prime>' or 'Q'");
      }
    } else if (key == "relation") {
      pending.push_back({value, lineno, vcol});
    } else if (words.size() == 2 && words[0] == "option") {
      const auto v = detail::trim(value);
      if (words[1] == "degree_bound") {
        doc.degree_bound = detail::parse_count(v, lineno, vcol, "degree_bound");
        if (*doc.degree_bound < 2) throw ParseError(ParseError::Kind::Semantic, lineno, vcol, "degree_bound must be >= 2");
      } else if (words[1] == "max_period") {
        doc.max_period = detail::parse_count(v, lineno, vcol, "max_period");
        if (*doc.max_period < 1) throw ParseError(ParseError::Kind::Semantic, lineno, vcol, "max_period must be >= 1");
      } else if (words[1] == "assume_period4") {
        if (v != "true" && v != "false")
          throw ParseError(ParseError::Kind::Syntax, lineno, vcol, "expected 'true' or 'false'");
        doc.assume_period4 = v == "true";
      } else {
        throw ParseError(ParseError::Kind::Syntax, lineno, 8, "unknown option '" + words[1] + "'");
      }
    } else {
      throw ParseError(ParseError::Kind::Syntax, lineno, 1, "unknown keyword '" + key + "'");
    }
  }
  if (!have_vertices) throw ParseError(ParseError::Kind::Semantic, lineno + 1, 1, "no 'vertices:' line");

  const Quiver q = doc.quiver();
  for (const auto& r : pending) {
    detail::ExpressionParser p(q, r.text, r.line, r.col);
    auto e = p.parse_relation();
    for (const auto& [path, c] : e.terms())
      if (path.length() < 2)
        throw ParseError(ParseError::Kind::Semantic, r.line, r.col,
                         "relation term '" + path_to_string(q, path) + "' has length < 2");
    if (!e.is_zero()) doc.relations.push_back(std::move(e));
  }
  return doc;
}

/// Quiver-only document.
inline InputDocument document_from_quiver(const Quiver& q) {
  InputDocument doc;
  for (VertexId v = 0; v < q.num_vertices(); ++v) doc.vertices.push_back(q.vertex_name(v));
  for (ArrowId a = 0; a < q.num_arrows(); ++a) doc.arrows.push_back(q.arrow(a));
  return doc;
}

/// Canonical text; parse_document(render_document(d)) == d.
inline std::string render_document(const InputDocument& doc) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& v : doc.vertices) os << ' ' << v;
  os << '\n';
  for (const auto& a : doc.arrows)
    os << "arrow " << a.name << ": " << doc.vertices[a.source] << " -> " << doc.vertices[a.target] << '\n';
  if (doc.field) {
    if (doc.field->kind == FieldSpec::Kind::Rational)
      os << "field: Q\n";
    else
      os << "field: Fp " << doc.field->prime << '\n';
  }
  if (!doc.relations.empty()) {
    const Quiver q = doc.quiver();
    const RationalField f;
    for (const auto& r : doc.relations) os << "relation: " << element_to_string(f, q, r) << '\n';
  }
  if (doc.degree_bound) os << "option degree_bound: " << *doc.degree_bound << '\n';
  if (doc.max_period) os << "option max_period: " << *doc.max_period << '\n';
  if (doc.assume_period4) os << "option assume_period4: true\n";
  return os.str();
}

/// FNV-1a 64-bit hash of the canonical rendering, as 16 hex digits.
inline std::string document_hash(const InputDocument& doc) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : render_document(doc)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) s[k] = hex[h & 15];
  return s;
}

/// Builds the presented algebra of a document over F.
template <ExactField F>
PresentedAlgebra<F> build_algebra(const InputDocument& doc, const F& f, std::optional<std::size_t> degree_bound = {}) {
  BuildOptions opts;
  opts.degree_bound = degree_bound.value_or(doc.degree_bound.value_or(kDefaultDegreeBound));
  return PresentedAlgebra<F>::build(doc.quiver(), convert_relations(doc, f), f, opts);
}

}  // namespace bq
