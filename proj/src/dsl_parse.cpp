#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "exactprob/dsl.hpp"

namespace exactprob::dsl {

namespace {

std::string render_all(const std::vector<Diagnostic>& diags) {
  if (diags.empty()) return "model error";
  std::string s = diags.front().render();
  if (diags.size() > 1)
    s += " (+" + std::to_string(diags.size() - 1) + " more diagnostics)";
  return s;
}

const std::unordered_set<std::string> kReserved = {
    "vars", "prior", "events", "queries", "default", "true",
    "false", "P", "total", "partition", "by",
};

struct Token {
  enum class Kind {
    Ident, Number, Arrow, Slash, Minus, LParen, RParen,
    EqEq, Assign, Not, AndAnd, OrOr, Bar, Colon, End,
  };
  Kind kind;
  std::string text;
  SourceLoc loc;
};

// Internal control flow for per-line error recovery.
struct ParseFail {
  Diagnostic diag;
};

[[noreturn]] void fail(SourceLoc loc, std::string message) {
  throw ParseFail{Diagnostic{loc, std::move(message)}};
}

std::string describe_char(unsigned char c) {
  if (std::isprint(c)) return std::string("'") + static_cast<char>(c) + "'";
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", c);
  return buf;
}

std::vector<Token> lex_line(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto loc_at = [&](std::size_t pos) { return SourceLoc{line_no, static_cast<int>(pos) + 1}; };
  while (i < line.size()) {
    const unsigned char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++i;
      continue;
    }
    const SourceLoc loc = loc_at(i);
    if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, std::string(line.substr(i, j - i)), loc});
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(line.substr(i, j - i)), loc});
      i = j;
      continue;
    }
    switch (c) {
      case '-':
        if (i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({Token::Kind::Arrow, "->", loc});
          i += 2;
        } else {
          out.push_back({Token::Kind::Minus, "-", loc});
          ++i;
        }
        continue;
      case '/': out.push_back({Token::Kind::Slash, "/", loc}); ++i; continue;
      case '(': out.push_back({Token::Kind::LParen, "(", loc}); ++i; continue;
      case ')': out.push_back({Token::Kind::RParen, ")", loc}); ++i; continue;
      case ':': out.push_back({Token::Kind::Colon, ":", loc}); ++i; continue;
      case '!': out.push_back({Token::Kind::Not, "!", loc}); ++i; continue;
      case '=':
        if (i + 1 < line.size() && line[i + 1] == '=') {
          out.push_back({Token::Kind::EqEq, "==", loc});
          i += 2;
        } else {
          out.push_back({Token::Kind::Assign, "=", loc});
          ++i;
        }
        continue;
      case '&':
        if (i + 1 < line.size() && line[i + 1] == '&') {
          out.push_back({Token::Kind::AndAnd, "&&", loc});
          i += 2;
          continue;
        }
        fail(loc, "single '&' is not an operator; use '&&'");
      case '|':
        if (i + 1 < line.size() && line[i + 1] == '|') {
          out.push_back({Token::Kind::OrOr, "||", loc});
          i += 2;
        } else {
          out.push_back({Token::Kind::Bar, "|", loc});
          ++i;
        }
        continue;
      default:
        fail(loc, "unexpected character " + describe_char(c));
    }
  }
  out.push_back({Token::Kind::End, "", loc_at(line.size())});
  return out;
}

// Recursive-descent over one line's tokens.
class TokenStream {
public:
  explicit TokenStream(const std::vector<Token>& tokens) : tokens_(tokens) {}

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  bool accept(Token::Kind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Token::Kind kind, const char* what) {
    if (peek().kind != kind)
      fail(peek().loc, std::string("expected ") + what + here());
    return tokens_[pos_++];
  }
  void expect_end(const char* context) {
    if (!at_end())
      fail(peek().loc, std::string("unexpected trailing tokens after ") + context);
  }

  std::string here() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::End) return " at end of line";
    return " before '" + t.text + "'";
  }

private:
  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

constexpr int kMaxExprDepth = 200;

ExprPtr parse_or(TokenStream& ts, int depth);

ExprPtr parse_primary(TokenStream& ts, int depth) {
  if (depth > kMaxExprDepth) fail(ts.peek().loc, "expression too deeply nested");
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::LParen) {
    ts.next();
    ExprPtr inner = parse_or(ts, depth + 1);
    ts.expect(Token::Kind::RParen, "')'");
    return inner;
  }
  if (t.kind == Token::Kind::Ident) {
    ts.next();
    if (t.text == "true") return Expr::lit(true, t.loc);
    if (t.text == "false") return Expr::lit(false, t.loc);
    if (kReserved.count(t.text))
      fail(t.loc, "reserved word '" + t.text + "' cannot name an event");
    return Expr::var(t.text, t.loc);
  }
  fail(t.loc, "expected an event expression" + ts.here());
}

ExprPtr parse_unary(TokenStream& ts, int depth) {
  if (depth > kMaxExprDepth) fail(ts.peek().loc, "expression too deeply nested");
  if (ts.peek().kind == Token::Kind::Not) {
    const SourceLoc loc = ts.next().loc;
    return Expr::negation(parse_unary(ts, depth + 1), loc);
  }
  return parse_primary(ts, depth);
}

ExprPtr parse_eq(TokenStream& ts, int depth) {
  ExprPtr lhs = parse_unary(ts, depth);
  while (ts.peek().kind == Token::Kind::EqEq) {
    const SourceLoc loc = ts.next().loc;
    lhs = Expr::equivalence(std::move(lhs), parse_unary(ts, depth), loc);
  }
  return lhs;
}

ExprPtr parse_and(TokenStream& ts, int depth) {
  ExprPtr lhs = parse_eq(ts, depth);
  while (ts.peek().kind == Token::Kind::AndAnd) {
    const SourceLoc loc = ts.next().loc;
    lhs = Expr::conjunction(std::move(lhs), parse_eq(ts, depth), loc);
  }
  return lhs;
}

ExprPtr parse_or(TokenStream& ts, int depth) {
  ExprPtr lhs = parse_and(ts, depth);
  while (ts.peek().kind == Token::Kind::OrOr) {
    const SourceLoc loc = ts.next().loc;
    lhs = Expr::disjunction(std::move(lhs), parse_and(ts, depth), loc);
  }
  return lhs;
}

Rational parse_rational(TokenStream& ts) {
  bool neg = ts.accept(Token::Kind::Minus);
  const Token& num_tok = ts.expect(Token::Kind::Number, "a rational literal");
  BigInt num(num_tok.text);
  if (neg) num = -num;
  BigInt den = 1;
  if (ts.accept(Token::Kind::Slash)) {
    const Token& den_tok = ts.expect(Token::Kind::Number, "digits after '/'");
    den = BigInt(den_tok.text);
    if (den == 0) fail(den_tok.loc, "denominator must be positive");
  }
  return Rational(std::move(num), std::move(den));
}

Query parse_query_tokens(TokenStream& ts) {
  const Token& head = ts.peek();
  Query q;
  q.loc = head.loc;
  auto parse_name_list = [&](const char* what) {
    std::vector<std::string> names;
    while (ts.peek().kind == Token::Kind::Ident) names.push_back(ts.next().text);
    if (names.empty())
      fail(ts.peek().loc, std::string("expected ") + what + ts.here());
    return names;
  };

  if (head.kind == Token::Kind::Ident && head.text == "P") {
    ts.next();
    ts.expect(Token::Kind::LParen, "'(' after 'P'");
    q.event = parse_or(ts, 0);
    if (ts.accept(Token::Kind::Bar)) {
      q.kind = Query::Kind::Conditional;
      q.given = parse_or(ts, 0);
      if (ts.peek().kind == Token::Kind::Bar)
        fail(ts.peek().loc, "only one '|' is allowed in a query; use '||' for disjunction");
    }
    ts.expect(Token::Kind::RParen, "')'");
    ts.expect_end("the query");
    return q;
  }
  if (head.kind == Token::Kind::Ident && head.text == "total") {
    ts.next();
    q.kind = Query::Kind::Total;
    const Token& p = ts.expect(Token::Kind::Ident, "'P('");
    if (p.text != "P") fail(p.loc, "expected 'P(' after 'total'");
    ts.expect(Token::Kind::LParen, "'(' after 'P'");
    q.event = parse_or(ts, 0);
    ts.expect(Token::Kind::RParen, "')'");
    const Token& by = ts.expect(Token::Kind::Ident, "'by'");
    if (by.text != "by") fail(by.loc, "expected 'by' after the event");
    q.names = parse_name_list("block event names after 'by'");
    ts.expect_end("the query");
    return q;
  }
  if (head.kind == Token::Kind::Ident && head.text == "partition") {
    ts.next();
    q.kind = Query::Kind::PartitionCheck;
    q.names = parse_name_list("event names after 'partition'");
    ts.expect_end("the query");
    return q;
  }
  fail(head.loc, "expected 'P(...)', 'total P(...) by ...', or 'partition ...'");
}

enum class Section { None, Vars, Prior, Events, Queries };

class ModelParser {
public:
  ModelFile run(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      handle_line(text.substr(start, end - start), line_no);
      if (end == text.size()) break;
      start = end + 1;
    }
    validate();
    if (!diags_.empty()) {
      std::sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return a.loc.line != b.loc.line ? a.loc.line < b.loc.line : a.loc.col < b.loc.col;
      });
      throw ModelError(std::move(diags_));
    }
    std::sort(model_.rows.begin(), model_.rows.end(),
              [](const PriorRow& a, const PriorRow& b) { return a.pattern < b.pattern; });
    return std::move(model_);
  }

private:
  void handle_line(std::string_view line, int line_no) {
    try {
      std::vector<Token> tokens = lex_line(line, line_no);
      if (tokens.front().kind == Token::Kind::End) return;
      if (tokens.size() >= 2 && tokens[0].kind == Token::Kind::Ident &&
          tokens[1].kind == Token::Kind::Colon) {
        handle_section_header(tokens);
        return;
      }
      TokenStream ts(tokens);
      switch (section_) {
        case Section::None:
          fail(tokens.front().loc, "expected a section header ('vars:' comes first)");
        case Section::Vars:
          fail(tokens.front().loc, "declare all variables on the 'vars:' line itself");
        case Section::Prior: parse_prior_row(ts); break;
        case Section::Events: parse_event_decl(ts); break;
        case Section::Queries: model_.queries.push_back(parse_query_tokens(ts)); break;
      }
    } catch (ParseFail& f) {
      diags_.push_back(std::move(f.diag));
    }
  }

  void handle_section_header(const std::vector<Token>& tokens) {
    const Token& name = tokens[0];
    Section next;
    if (name.text == "vars") next = Section::Vars;
    else if (name.text == "prior") next = Section::Prior;
    else if (name.text == "events") next = Section::Events;
    else if (name.text == "queries") next = Section::Queries;
    else fail(name.loc, "unknown section '" + name.text + "'");
    if (static_cast<int>(next) <= static_cast<int>(section_)) {
      fail(name.loc, next == section_
                         ? "duplicate section '" + name.text + ":'"
                         : "section '" + name.text + ":' is out of order");
    }
    section_ = next;
    TokenStream ts(tokens);
    ts.next();  // section name
    ts.next();  // colon
    if (next == Section::Vars) {
      vars_loc_ = name.loc;
      while (!ts.at_end()) {
        const Token& var = ts.expect(Token::Kind::Ident, "a variable name");
        declare_var(var);
      }
      if (model_.vars.empty()) fail(name.loc, "at least one variable is required");
      if (model_.vars.size() > 16)
        fail(name.loc, "too many variables (" + std::to_string(model_.vars.size()) +
                           "; the format is capped at 16)");
    } else {
      if (next == Section::Prior) prior_loc_ = name.loc;
      ts.expect_end(("'" + name.text + ":'").c_str());
    }
  }

  void declare_var(const Token& var) {
    if (kReserved.count(var.text))
      fail(var.loc, "reserved word '" + var.text + "' cannot be a variable name");
    if (std::find(model_.vars.begin(), model_.vars.end(), var.text) != model_.vars.end())
      fail(var.loc, "duplicate variable '" + var.text + "'");
    model_.vars.push_back(var.text);
  }

  void parse_prior_row(TokenStream& ts) {
    const Token& first = ts.peek();
    if (first.kind == Token::Kind::Ident && first.text == "default") {
      ts.next();
      ts.accept(Token::Kind::Arrow);  // `default -> p` and `default p` both parse
      Rational value = parse_rational(ts);
      ts.expect_end("the default row");
      if (model_.default_weight)
        fail(first.loc, "duplicate 'default' row");
      model_.default_weight = std::move(value);
      default_loc_ = first.loc;
      return;
    }
    std::uint32_t pattern = 0;
    std::size_t arity = 0;
    while (ts.peek().kind == Token::Kind::Ident || ts.peek().kind == Token::Kind::Number) {
      const Token& atom = ts.next();
      bool bit;
      if (atom.text == "T" || atom.text == "1") bit = true;
      else if (atom.text == "F" || atom.text == "0") bit = false;
      else fail(atom.loc, "expected 'T', 'F', '1', or '0' in a pattern, got '" + atom.text + "'");
      pattern = (pattern << 1) | (bit ? 1u : 0u);
      ++arity;
      if (arity > 16) fail(atom.loc, "pattern has more than 16 atoms");
    }
    const SourceLoc row_loc = first.loc;
    ts.expect(Token::Kind::Arrow, "'->' after the pattern");
    Rational value = parse_rational(ts);
    ts.expect_end("the prior row");
    if (!model_.vars.empty() && arity != model_.vars.size())
      fail(row_loc, "pattern has " + std::to_string(arity) + " atoms for " +
                        std::to_string(model_.vars.size()) + " variables");
    if (!seen_patterns_.insert(pattern).second)
      fail(row_loc, "duplicate row for pattern '" + model_.pattern_text(pattern) + "'");
    model_.rows.push_back({pattern, std::move(value), row_loc});
  }

  void parse_event_decl(TokenStream& ts) {
    const Token& name = ts.expect(Token::Kind::Ident, "an event name");
    if (kReserved.count(name.text))
      fail(name.loc, "reserved word '" + name.text + "' cannot be an event name");
    ts.expect(Token::Kind::Assign, "'=' after the event name");
    ExprPtr expr = parse_or(ts, 0);
    ts.expect_end("the event definition");
    if (std::find(model_.vars.begin(), model_.vars.end(), name.text) != model_.vars.end())
      fail(name.loc, "'" + name.text + "' is already a variable name");
    for (const EventDecl& e : model_.events)
      if (e.name == name.text) fail(name.loc, "duplicate event '" + name.text + "'");
    model_.events.push_back({name.text, std::move(expr), name.loc});
  }

  // Post-parse semantic checks; every finding becomes a located diagnostic.
  void validate() {
    if (model_.vars.empty() && vars_loc_.line == 0) {
      diags_.push_back({{1, 1}, "missing 'vars:' section"});
      return;
    }
    if (prior_loc_.line == 0) {
      diags_.push_back({{1, 1}, "missing 'prior:' section"});
    }
    const std::size_t n = model_.vars.size();
    if (n == 0 || n > 16) return;

    for (const PriorRow& row : model_.rows)
      if (row.value.is_negative())
        diags_.push_back({row.loc, "pattern '" + model_.pattern_text(row.pattern) +
                                       "' has negative weight " + row.value.str()});
    if (model_.default_weight && model_.default_weight->is_negative())
      diags_.push_back({default_loc_, "default weight " + model_.default_weight->str() +
                                          " is negative"});

    if (prior_loc_.line != 0) {
      const std::size_t total = std::size_t{1} << n;
      if (!model_.default_weight && model_.rows.size() < total) {
        for (std::uint32_t p = 0; p < total; ++p) {
          if (!seen_patterns_.count(p)) {
            diags_.push_back({prior_loc_, "pattern '" + model_.pattern_text(p) +
                                              "' has no prior row and no default is given"});
            break;
          }
        }
      } else {
        Rational sum;
        for (const PriorRow& row : model_.rows) sum += row.value;
        if (model_.default_weight)
          sum += *model_.default_weight * Rational(BigInt(total - model_.rows.size()));
        if (!(sum == Rational(1)))
          diags_.push_back({prior_loc_, "prior sums to " + sum.str() + ", expected 1"});
      }
    }

    std::unordered_set<std::string> known(model_.vars.begin(), model_.vars.end());
    for (const EventDecl& e : model_.events) {
      check_resolvable(e.expr, known);
      known.insert(e.name);
    }
    for (const Query& q : model_.queries) {
      if (q.event) check_resolvable(q.event, known);
      if (q.given) check_resolvable(q.given, known);
      for (const std::string& name : q.names)
        if (!known.count(name))
          diags_.push_back({q.loc, "unknown event '" + name + "' in query"});
    }
  }

  void check_resolvable(const ExprPtr& e, const std::unordered_set<std::string>& known) {
    if (!e) return;
    if (e->kind == Expr::Kind::Var && !known.count(e->name))
      diags_.push_back({e->loc, "unknown identifier '" + e->name + "'"});
    check_resolvable(e->lhs, known);
    check_resolvable(e->rhs, known);
  }

  ModelFile model_;
  std::vector<Diagnostic> diags_;
  Section section_ = Section::None;
  SourceLoc vars_loc_{0, 0};
  SourceLoc prior_loc_{0, 0};
  SourceLoc default_loc_{0, 0};
  std::set<std::uint32_t> seen_patterns_;
};

}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diags)
    : Error(render_all(diags)), diags_(std::move(diags)) {}

ExprPtr Expr::var(std::string name, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(name);
  e->loc = loc;
  return e;
}

ExprPtr Expr::lit(bool value, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Lit;
  e->lit_value = value;
  e->loc = loc;
  return e;
}

namespace {
ExprPtr binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->loc = loc;
  return e;
}
}  // namespace

ExprPtr Expr::negation(ExprPtr operand, SourceLoc loc) {
  return binary(Kind::Not, std::move(operand), nullptr, loc);
}
ExprPtr Expr::conjunction(ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  return binary(Kind::And, std::move(lhs), std::move(rhs), loc);
}
ExprPtr Expr::disjunction(ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  return binary(Kind::Or, std::move(lhs), std::move(rhs), loc);
}
ExprPtr Expr::equivalence(ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  return binary(Kind::Eq, std::move(lhs), std::move(rhs), loc);
}

ModelFile parse_model(std::string_view text) { return ModelParser{}.run(text); }

Query parse_query(std::string_view text) {
  try {
    // A query string is one logical line; embedded newlines act as spaces.
    std::string flat(text);
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    std::vector<Token> tokens = lex_line(flat, 1);
    if (tokens.front().kind == Token::Kind::End)
      fail(tokens.front().loc, "empty query");
    TokenStream ts(tokens);
    return parse_query_tokens(ts);
  } catch (ParseFail& f) {
    throw ModelError({std::move(f.diag)});
  }
}

std::string ModelFile::pattern_text(std::uint32_t pattern) const {
  const std::size_t n = vars.size();
  std::string s;
  for (std::size_t k = 0; k < n; ++k) {
    if (k) s += ' ';
    s += ((pattern >> (n - 1 - k)) & 1) ? 'T' : 'F';
  }
  return s;
}

OutcomeSpace ModelFile::space() const { return OutcomeSpace::boolean_cube(vars); }

PriorAssignment ModelFile::prior() const {
  const std::size_t n = vars.size();
  if (n == 0) throw ValidationError("model has no variables");
  const std::size_t total = std::size_t{1} << n;
  std::vector<Rational> weights;
  std::vector<bool> seen(total, false);
  weights.assign(total, default_weight ? *default_weight : Rational());
  for (const PriorRow& row : rows) {
    if (row.pattern >= total) throw ValidationError("prior row pattern out of range");
    if (seen[row.pattern])
      throw ValidationError("duplicate row for pattern '" + pattern_text(row.pattern) + "'");
    seen[row.pattern] = true;
    weights[row.pattern] = row.value;
  }
  if (!default_weight) {
    for (std::size_t p = 0; p < total; ++p)
      if (!seen[p])
        throw ValidationError("pattern '" + pattern_text(static_cast<std::uint32_t>(p)) +
                              "' has no prior row and no default is given");
  }
  return PriorAssignment(space(), std::move(weights));
}

}  // namespace exactprob::dsl
