#include "linord/filter.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace linord {

namespace {

enum class FieldType { integer, rational, text, boolean };

struct FieldInfo {
  FieldType type;
};

std::optional<FieldInfo> field_info(std::string_view name) {
  if (name == "dataset_id" || name == "n" || name == "num_optimal_rankings" ||
      name == "diameter" || name == "p" || name == "tau" || name == "schema_version")
    return FieldInfo{FieldType::integer};
  if (name == "optimal_objective" || name == "k" || name == "beta")
    return FieldInfo{FieldType::rational};
  if (name == "source" || name == "method" || name == "sense")
    return FieldInfo{FieldType::text};
  if (name == "complete") return FieldInfo{FieldType::boolean};
  return std::nullopt;
}

[[noreturn]] void fail_at(std::size_t pos, const std::string& msg) {
  throw std::runtime_error("query position " + std::to_string(pos) + ": " + msg);
}

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  bool consume(std::string_view token) {
    skip_space();
    if (text.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }
  std::string word() {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '.' || text[pos] == '-' ||
                                 text[pos] == '/' || text[pos] == '+'))
      ++pos;
    return std::string(text.substr(start, pos - start));
  }
  std::string value_token() {
    skip_space();
    if (pos < text.size() && (text[pos] == '"' || text[pos] == '\'')) {
      const char quote = text[pos];
      const std::size_t start = ++pos;
      while (pos < text.size() && text[pos] != quote) ++pos;
      if (pos >= text.size()) fail_at(start - 1, "unterminated quoted string");
      std::string v(text.substr(start, pos - start));
      ++pos;
      return v;
    }
    return word();
  }
};

FilterOp parse_op(Lexer& lex) {
  const std::size_t at = lex.pos;
  // Two-character operators first.
  if (lex.consume("==")) return FilterOp::eq;
  if (lex.consume("!=")) return FilterOp::ne;
  if (lex.consume("<=")) return FilterOp::le;
  if (lex.consume(">=")) return FilterOp::ge;
  if (lex.consume("<")) return FilterOp::lt;
  if (lex.consume(">")) return FilterOp::gt;
  Lexer probe = lex;
  if (probe.word() == "contains") {
    lex = probe;
    return FilterOp::contains;
  }
  fail_at(at, "expected an operator (==, !=, <, <=, >, >=, contains)");
}

bool compare(std::strong_ordering ord, FilterOp op) {
  switch (op) {
    case FilterOp::eq: return ord == std::strong_ordering::equal;
    case FilterOp::ne: return ord != std::strong_ordering::equal;
    case FilterOp::lt: return ord == std::strong_ordering::less;
    case FilterOp::le: return ord != std::strong_ordering::greater;
    case FilterOp::gt: return ord == std::strong_ordering::greater;
    case FilterOp::ge: return ord != std::strong_ordering::less;
    case FilterOp::contains: break;
  }
  throw std::logic_error("contains is not an ordering comparison");
}

// Numeric card fields as exact rationals; absent optionals yield nullopt and
// never match.
std::optional<Rational> numeric_field(const ModelCard& c, std::string_view name) {
  if (name == "dataset_id") return Rational(c.dataset_id);
  if (name == "n") return Rational(c.n);
  if (name == "num_optimal_rankings" || name == "p")
    return Rational(static_cast<long long>(c.num_optimal_rankings));
  if (name == "diameter" || name == "tau") return Rational(c.diameter);
  if (name == "schema_version") return Rational(c.schema_version);
  if (name == "optimal_objective") return c.optimal_objective;
  if (name == "beta") return c.measures.beta;
  if (name == "k") return c.measures.k;
  return std::nullopt;
}

std::string text_field(const ModelCard& c, std::string_view name) {
  if (name == "source") return c.source;
  if (name == "method") return std::string(to_string(c.method));
  return std::string(to_string(c.sense));
}

}  // namespace

std::vector<Predicate> parse_query(std::string_view query) {
  Lexer lex{query};
  std::vector<Predicate> preds;
  if (lex.done()) throw std::runtime_error("empty query");
  while (true) {
    lex.skip_space();
    Predicate p;
    p.position = lex.pos;
    p.field = lex.word();
    if (p.field.empty()) fail_at(lex.pos, "expected a field name");
    const auto info = field_info(p.field);
    if (!info) fail_at(p.position, "unknown field '" + p.field + "'");
    p.op = parse_op(lex);

    const std::size_t value_at = lex.pos;
    p.value = lex.value_token();
    if (p.value.empty() && !(info->type == FieldType::text))
      fail_at(value_at, "expected a value");

    switch (info->type) {
      case FieldType::integer:
      case FieldType::rational:
        if (p.op == FilterOp::contains)
          fail_at(p.position, "'contains' applies to string fields only");
        try {
          Rational::parse(p.value);
        } catch (const std::exception&) {
          fail_at(value_at, "expected a numeric value for field '" + p.field + "'");
        }
        break;
      case FieldType::text:
        if (p.op != FilterOp::eq && p.op != FilterOp::ne && p.op != FilterOp::contains)
          fail_at(p.position, "field '" + p.field + "' supports ==, != and contains only");
        break;
      case FieldType::boolean:
        if (p.op != FilterOp::eq && p.op != FilterOp::ne)
          fail_at(p.position, "field '" + p.field + "' supports == and != only");
        if (p.value != "true" && p.value != "false")
          fail_at(value_at, "expected true or false");
        break;
    }
    preds.push_back(std::move(p));

    if (lex.done()) break;
    const std::size_t at = lex.pos;
    if (!lex.consume("&&")) fail_at(at, "expected '&&' between predicates");
    if (lex.done()) fail_at(lex.pos, "dangling '&&'");
  }
  return preds;
}

bool matches(const ModelCard& card, const std::vector<Predicate>& predicates) {
  for (const Predicate& p : predicates) {
    const FieldInfo info = *field_info(p.field);
    bool ok = false;
    switch (info.type) {
      case FieldType::integer:
      case FieldType::rational: {
        const auto actual = numeric_field(card, p.field);
        if (!actual) return false;  // absent (e.g. k on a weighted matrix)
        ok = compare(*actual <=> Rational::parse(p.value), p.op);
        break;
      }
      case FieldType::text: {
        const std::string actual = text_field(card, p.field);
        if (p.op == FilterOp::contains) ok = actual.find(p.value) != std::string::npos;
        else ok = (actual == p.value) == (p.op == FilterOp::eq);
        break;
      }
      case FieldType::boolean: {
        const bool want = p.value == "true";
        ok = (card.complete == want) == (p.op == FilterOp::eq);
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

std::vector<long long> filter_ids(const std::vector<ModelCard>& cards, std::string_view query) {
  const auto predicates = parse_query(query);
  std::vector<long long> ids;
  for (const ModelCard& c : cards)
    if (matches(c, predicates)) ids.push_back(c.dataset_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace linord
