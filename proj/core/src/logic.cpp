#include "stereo/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

namespace stereo {

// {{{ names and spaces

bool is_atom_name(std::string_view name) {
  if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
  if (name == "true" || name == "false") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name[0]);
  if (!(std::isalpha(head) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<Violation> WorldSpace::check(const std::vector<std::string>& atoms,
                                         const std::vector<World>& worlds) {
  std::vector<Violation> out;
  if (atoms.size() > kMaxAtoms) {
    out.push_back({ViolationKind::FormatError, "/atoms",
                   "at most " + std::to_string(kMaxAtoms) + " atoms are supported"});
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto loc = "/atoms/" + std::to_string(i);
    if (!is_atom_name(atoms[i])) {
      out.push_back({ViolationKind::InvalidName, loc, "invalid atom name '" + atoms[i] + "'"});
    }
    if (!seen.insert(atoms[i]).second) {
      out.push_back({ViolationKind::DuplicateName, loc, "atom '" + atoms[i] + "' declared twice"});
    }
  }
  if (worlds.empty()) {
    out.push_back({ViolationKind::NoWorlds, "/worlds", "a space needs at least one world"});
  }
  if (worlds.size() > kMaxWorlds) {
    out.push_back({ViolationKind::TooManyWorlds, "/worlds",
                   "at most " + std::to_string(kMaxWorlds) + " worlds are supported"});
  }
  const std::uint64_t valuation_mask =
      atoms.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atoms.size()) - 1;
  std::set<std::string, std::less<>> world_names;
  std::unordered_map<std::uint64_t, std::size_t> valuations;
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const auto& w = worlds[i];
    const auto loc = "/worlds/" + std::to_string(i);
    if (!is_identifier(w.name)) {
      out.push_back({ViolationKind::InvalidName, loc, "invalid world name '" + w.name + "'"});
    }
    if (!world_names.insert(w.name).second) {
      out.push_back({ViolationKind::DuplicateName, loc, "world '" + w.name + "' declared twice"});
    }
    if ((w.valuation & ~valuation_mask) != 0) {
      out.push_back({ViolationKind::UnknownAtom, loc, "valuation sets undeclared atoms"});
    }
    const auto [it, fresh] = valuations.emplace(w.valuation, i);
    if (!fresh) {
      out.push_back({ViolationKind::DuplicateValuation, loc,
                     "worlds '" + worlds[it->second].name + "' and '" + w.name +
                         "' have identical valuations"});
    }
  }
  return out;
}

WorldSpace::WorldSpace(std::vector<std::string> atoms, std::vector<World> worlds)
    : atoms_(std::move(atoms)), worlds_(std::move(worlds)) {
  if (auto problems = check(atoms_, worlds_); !problems.empty()) {
    throw KbError(std::move(problems.front()));
  }
}

std::optional<std::size_t> WorldSpace::atom_index(std::string_view name) const {
  const auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::optional<std::size_t> WorldSpace::world_index(std::string_view name) const {
  const auto it = std::find_if(worlds_.begin(), worlds_.end(),
                               [&](const World& w) { return w.name == name; });
  if (it == worlds_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - worlds_.begin());
}

std::vector<std::string> WorldSpace::names(InfoSet set) const {
  std::vector<std::string> out;
  for (auto i : set.members()) {
    if (i < worlds_.size()) out.push_back(worlds_[i].name);
  }
  return out;
}

std::string WorldSpace::format(InfoSet set) const {
  std::string out = "{";
  bool first = true;
  for (const auto& n : names(set)) {
    out += first ? "" : ", ";
    out += n;
    first = false;
  }
  return out + "}";
}

WorldSpace binary_space(std::size_t count) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < count) ++bits;
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < bits; ++i) atoms.push_back("x" + std::to_string(i));
  std::vector<World> worlds;
  for (std::size_t i = 0; i < count; ++i) worlds.push_back({"w" + std::to_string(i), i});
  return WorldSpace(std::move(atoms), std::move(worlds));
}

// }}}
// {{{ formula nodes

struct Formula::Node {
  Connective connective;
  std::size_t atom = 0;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
};

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Connective::Top}));
  return f;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(Node{Connective::Bottom}));
  return f;
}

Formula Formula::atom(std::size_t index) {
  return Formula(std::make_shared<const Node>(Node{Connective::Atom, index}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Connective::Not, 0, std::move(operand)}));
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{c, 0, std::move(lhs), std::move(rhs)}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return binary(Connective::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return binary(Connective::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return binary(Connective::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return binary(Connective::Iff, std::move(lhs), std::move(rhs));
}

Connective Formula::connective() const { return node_->connective; }
std::size_t Formula::atom_index() const { return node_->atom; }
const Formula& Formula::lhs() const { return *node_->lhs; }
const Formula& Formula::rhs() const { return *node_->rhs; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.connective() != b.connective()) return false;
  switch (a.connective()) {
    case Connective::Top:
    case Connective::Bottom: return true;
    case Connective::Atom: return a.atom_index() == b.atom_index();
    case Connective::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// }}}
// {{{ parser

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto punct = [&](Tok kind, std::size_t len) {
    out.push_back({kind, i, std::string(text.substr(i, len))});
    i += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      Tok kind = word == "true" ? Tok::True : word == "false" ? Tok::False : Tok::Ident;
      out.push_back({kind, i, std::move(word)});
      i = j;
    } else if (c == '~' || c == '!') {
      punct(Tok::Not, 1);
    } else if (c == '&') {
      punct(Tok::And, 1);
    } else if (c == '|') {
      punct(Tok::Or, 1);
    } else if (c == '(') {
      punct(Tok::LParen, 1);
    } else if (c == ')') {
      punct(Tok::RParen, 1);
    } else if (text.substr(i, 2) == "->") {
      punct(Tok::Implies, 2);
    } else if (text.substr(i, 3) == "<->") {
      punct(Tok::Iff, 3);
    } else {
      throw SyntaxError(i, {"atom", "'true'", "'false'", "'~'", "'('", "binary connective"},
                        "'" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, text.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const WorldSpace& space)
      : tokens_(std::move(tokens)), space_(space) {}

  Formula parse() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) {
      fail({"'&'", "'|'", "'->'", "'<->'", "end of input"});
    }
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const auto& t = peek();
    throw SyntaxError(t.offset, std::move(expected),
                      t.kind == Tok::End ? std::string(describe(t.kind)) : "'" + t.text + "'");
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (peek().kind == Tok::Iff) {
      next();
      lhs = Formula::equivalence(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      next();
      return Formula::implication(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      lhs = Formula::disjunction(std::move(lhs), parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::And) {
      next();
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    if (peek().kind == Tok::Not) {
      next();
      return Formula::negation(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    switch (peek().kind) {
      case Tok::True: next(); return Formula::top();
      case Tok::False: next(); return Formula::bottom();
      case Tok::Ident: {
        const Token t = next();
        const auto index = space_.atom_index(t.text);
        if (!index) throw UnknownAtom(t.text, t.offset);
        return Formula::atom(*index);
      }
      case Tok::LParen: {
        next();
        Formula inner = parse_iff();
        if (peek().kind != Tok::RParen) {
          fail({"'&'", "'|'", "'->'", "'<->'", "')'"});
        }
        next();
        return inner;
      }
      default: fail({"atom", "'true'", "'false'", "'~'", "'('"});
    }
  }

  std::vector<Token> tokens_;
  const WorldSpace& space_;
  std::size_t pos_ = 0;
};

int precedence(Connective c) {
  switch (c) {
    case Connective::Iff: return 1;
    case Connective::Implies: return 2;
    case Connective::Or: return 3;
    case Connective::And: return 4;
    case Connective::Not: return 5;
    default: return 6;
  }
}

void print(const Formula& f, const WorldSpace& space, std::string& out) {
  const auto child = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, space, out);
    if (parens) out += ')';
  };
  const int p = precedence(f.connective());
  switch (f.connective()) {
    case Connective::Top: out += "true"; return;
    case Connective::Bottom: out += "false"; return;
    case Connective::Atom: out += space.atoms().at(f.atom_index()); return;
    case Connective::Not:
      out += '~';
      child(f.lhs(), precedence(f.lhs().connective()) < p);
      return;
    default: break;
  }
  const bool right_assoc = f.connective() == Connective::Implies;
  const int lp = precedence(f.lhs().connective());
  const int rp = precedence(f.rhs().connective());
  child(f.lhs(), lp < p || (lp == p && right_assoc));
  switch (f.connective()) {
    case Connective::And: out += " & "; break;
    case Connective::Or: out += " | "; break;
    case Connective::Implies: out += " -> "; break;
    default: out += " <-> "; break;
  }
  child(f.rhs(), rp < p || (rp == p && !right_assoc));
}

}  // namespace

Formula parse_formula(std::string_view text, const WorldSpace& space) {
  auto tokens = lex(text);
  if (tokens.size() == 1) {
    throw SyntaxError(0, {"atom", "'true'", "'false'", "'~'", "'('"}, "end of input");
  }
  return Parser(std::move(tokens), space).parse();
}

std::string to_string(const Formula& formula, const WorldSpace& space) {
  std::string out;
  print(formula, space, out);
  return out;
}

// }}}
// {{{ semantics

bool eval(const Formula& f, std::uint64_t valuation) {
  switch (f.connective()) {
    case Connective::Top: return true;
    case Connective::Bottom: return false;
    case Connective::Atom: return (valuation >> f.atom_index()) & 1U;
    case Connective::Not: return !eval(f.lhs(), valuation);
    case Connective::And: return eval(f.lhs(), valuation) && eval(f.rhs(), valuation);
    case Connective::Or: return eval(f.lhs(), valuation) || eval(f.rhs(), valuation);
    case Connective::Implies: return !eval(f.lhs(), valuation) || eval(f.rhs(), valuation);
    case Connective::Iff: return eval(f.lhs(), valuation) == eval(f.rhs(), valuation);
  }
  return false;
}

InfoSet models(const Formula& formula, const WorldSpace& space) {
  std::uint64_t bits = 0;
  const auto& worlds = space.worlds();
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (eval(formula, worlds[i])) bits |= std::uint64_t{1} << i;
  }
  return InfoSet(bits);
}

Formula canonical_formula(InfoSet set, const WorldSpace& space) {
  std::optional<Formula> disjunction;
  for (auto w : set.members()) {
    if (w >= space.size()) continue;
    std::optional<Formula> conjunction;
    for (std::size_t a = 0; a < space.atoms().size(); ++a) {
      Formula literal = space.worlds()[w].holds(a) ? Formula::atom(a)
                                                   : Formula::negation(Formula::atom(a));
      conjunction = conjunction ? Formula::conjunction(std::move(*conjunction), std::move(literal))
                                : std::move(literal);
    }
    Formula term = conjunction ? std::move(*conjunction) : Formula::top();
    disjunction = disjunction ? Formula::disjunction(std::move(*disjunction), std::move(term))
                              : std::move(term);
  }
  return disjunction ? std::move(*disjunction) : Formula::bottom();
}

// }}}

}  // namespace stereo
