#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stereo/distance_value.hpp"
#include "stereo/error.hpp"
#include "stereo/info_set.hpp"
#include "stereo/logic.hpp"

namespace stereo {

struct Stereotype {
  std::string name;
  InfoSet extent;

  friend bool operator==(const Stereotype&, const Stereotype&) = default;
};

// Distance families. Parameters are resolved to indices of the owning knowledge base.

/// d(F, S) = 0.
struct ConstantFamily {
  friend bool operator==(const ConstantFamily&, const ConstantFamily&) = default;
};

/// d(F, S) = |S - F| - |S ∩ F|.
struct CardinalityFamily {
  friend bool operator==(const CardinalityFamily&, const CardinalityFamily&) = default;
};

/// Singleton stereotypes; d(F, {w}) = rank[w] if w ∈ F, else infinity.
struct MinWorldFamily {
  std::vector<std::uint64_t> rank;  // by world index, injective
  friend bool operator==(const MinWorldFamily&, const MinWorldFamily&) = default;
};

/// Stereotypes partition W; d(F, S_i) = |S_i - F| + i/k with i = position of S_i in the order.
struct PartitionCoverFamily {
  std::vector<std::size_t> order;  // stereotype indices
  friend bool operator==(const PartitionCoverFamily&, const PartitionCoverFamily&) = default;
};

/// Explicit table over every (F, S) pair, laid out as values[F.bits() * |stereotypes| + S].
struct TableFamily {
  std::vector<DistanceValue> values;
  friend bool operator==(const TableFamily&, const TableFamily&) = default;
};

using DistanceFamily =
    std::variant<ConstantFamily, CardinalityFamily, MinWorldFamily, PartitionCoverFamily, TableFamily>;

/// JSON `family` tag of a distance family.
const char* family_name(const DistanceFamily& family);

/// Largest space for which TABLE distances may be declared (2^|W| rows).
inline constexpr std::size_t kMaxTableWorlds = 16;

/// World space, finite stereotype list and distance family; immutable once built.
class KnowledgeBase {
 public:
  /// Throws KbError on the first violated invariant.
  KnowledgeBase(WorldSpace space, std::vector<Stereotype> stereotypes, DistanceFamily distance);

  static std::vector<Violation> check(const WorldSpace& space,
                                      const std::vector<Stereotype>& stereotypes,
                                      const DistanceFamily& distance);

  const WorldSpace& space() const { return space_; }
  const std::vector<Stereotype>& stereotypes() const { return stereotypes_; }
  const Stereotype& stereotype(std::size_t index) const { return stereotypes_.at(index); }
  std::size_t stereotype_count() const { return stereotypes_.size(); }
  const DistanceFamily& distance() const { return distance_; }

  std::optional<std::size_t> stereotype_index(std::string_view name) const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  WorldSpace space_;
  std::vector<Stereotype> stereotypes_;
  DistanceFamily distance_;
};

// {{{ document form: names unresolved, exactly as written in the KB file

struct WorldDoc {
  std::string name;
  std::vector<std::pair<std::string, bool>> valuation;
};

struct StereotypeDoc {
  std::string name;
  std::optional<std::vector<std::string>> worlds;
  std::optional<std::string> formula;
};

struct TableEntryDoc {
  std::vector<std::string> worlds;
  std::string stereotype;
  DistanceValue value;
};

struct DistanceDoc {
  std::string family;
  std::optional<std::vector<std::pair<std::string, std::int64_t>>> rank;
  std::optional<std::vector<std::string>> order;
  std::optional<std::vector<TableEntryDoc>> entries;
};

struct KbDocument {
  std::vector<std::string> atoms;
  std::vector<WorldDoc> worlds;
  std::vector<StereotypeDoc> stereotypes;
  DistanceDoc distance;
};

/// Parses the JSON text into document form. Throws KbError(FormatError) on malformed
/// JSON, wrong types, missing or unknown fields.
KbDocument parse_kb_document(std::string_view json_text);

/// Every invariant violation of the document; empty iff it resolves to a knowledge base.
std::vector<Violation> validate_kb(const KbDocument& document);
std::vector<Violation> validate_kb(const KnowledgeBase& kb);

/// Resolves names and formulas. Throws KbError carrying the first violation.
KnowledgeBase resolve_kb(const KbDocument& document);

KnowledgeBase load_kb(std::string_view json_text);
KnowledgeBase load_kb_file(const std::filesystem::path& path);

/// Canonical document: stereotypes as explicit world lists, declaration order throughout.
KbDocument to_document(const KnowledgeBase& kb);
/// Canonical JSON serialization, two-space indented, trailing newline.
std::string serialize_kb(const KnowledgeBase& kb);

// }}}

}  // namespace stereo
