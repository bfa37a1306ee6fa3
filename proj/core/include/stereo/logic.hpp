#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stereo/error.hpp"
#include "stereo/info_set.hpp"

namespace stereo {

inline constexpr std::size_t kMaxAtoms = 64;

/// A named total valuation; bit i of `valuation` is the truth value of atom i.
struct World {
  std::string name;
  std::uint64_t valuation = 0;

  bool holds(std::size_t atom) const { return (valuation >> atom) & 1U; }
  friend bool operator==(const World&, const World&) = default;
};

bool is_atom_name(std::string_view name);
bool is_identifier(std::string_view name);

/// Ordered atoms plus ordered worlds with pairwise distinct valuations.
class WorldSpace {
 public:
  /// Throws KbError on the first violated invariant.
  WorldSpace(std::vector<std::string> atoms, std::vector<World> worlds);

  /// All invariant violations of a prospective space; empty iff valid.
  static std::vector<Violation> check(const std::vector<std::string>& atoms,
                                      const std::vector<World>& worlds);

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<World>& worlds() const { return worlds_; }
  std::size_t size() const { return worlds_.size(); }
  InfoSet all() const { return InfoSet::full(worlds_.size()); }

  std::optional<std::size_t> atom_index(std::string_view name) const;
  std::optional<std::size_t> world_index(std::string_view name) const;

  /// World names of a set in declaration order.
  std::vector<std::string> names(InfoSet set) const;
  /// "{w0, w3}".
  std::string format(InfoSet set) const;

  friend bool operator==(const WorldSpace&, const WorldSpace&) = default;

 private:
  std::vector<std::string> atoms_;
  std::vector<World> worlds_;
};

/// Space of `count` worlds w0..w{count-1} whose valuations are the binary encodings
/// of their indices over atoms x0, x1, ...
WorldSpace binary_space(std::size_t count);

enum class Connective { Top, Bottom, Atom, Not, And, Or, Implies, Iff };

/// Immutable propositional formula; atoms are indices into the ambient space.
class Formula {
 public:
  static Formula top();
  static Formula bottom();
  static Formula atom(std::size_t index);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Connective connective() const;
  /// Atom index; only meaningful for Connective::Atom.
  std::size_t atom_index() const;
  /// Operand of Not, left operand of binary connectives.
  const Formula& lhs() const;
  const Formula& rhs() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Connective c, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

/// Grammar, loosest to tightest: `<->` (left-assoc), `->` (right-assoc),
/// `|`, `&` (both left-assoc), prefix `~` / `!`, atoms, `true`, `false`, parentheses.
Formula parse_formula(std::string_view text, const WorldSpace& space);

/// Prints with the minimal parentheses needed to re-parse to the same tree.
std::string to_string(const Formula& formula, const WorldSpace& space);

bool eval(const Formula& formula, std::uint64_t valuation);
inline bool eval(const Formula& formula, const World& world) { return eval(formula, world.valuation); }

InfoSet models(const Formula& formula, const WorldSpace& space);

/// Disjunction over the worlds of `set` of the conjunction of literals describing each;
/// `false` for the empty set. Worlds and atoms appear in declaration order.
Formula canonical_formula(InfoSet set, const WorldSpace& space);

}  // namespace stereo
