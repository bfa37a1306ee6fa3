#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stereo/distance_value.hpp"
#include "stereo/info_set.hpp"
#include "stereo/knowledge_base.hpp"
#include "stereo/logic.hpp"

namespace stereo {

struct InferenceResult {
  InfoSet given;
  std::optional<std::size_t> chosen;  // stereotype index; empty iff `given` is empty
  InfoSet consequences;               // given ∩ extent(chosen)
  bool consistent = true;             // consequences nonempty, or given empty
  std::vector<DistanceValue> distances;  // by stereotype index
};

/// Indices of the stereotypes at minimal distance, in declaration order.
std::vector<std::size_t> minimal_stereotypes(const std::vector<DistanceValue>& distances);

/// The unique closest stereotype. Throws EmptyInfoSet, or NoUniqueMinimum on a tie.
std::size_t best_stereotype(const KnowledgeBase& kb, InfoSet given);

/// F' = F ∩ S^F. The empty set short-circuits selection: no stereotype, no consequences.
InferenceResult nm_consequences(const KnowledgeBase& kb, InfoSet given);

/// alpha |~ beta: every world of F' satisfies beta, where F = models(alpha).
bool nm_entails(const KnowledgeBase& kb, const Formula& alpha, const Formula& beta);

/// Canonical formula of the best stereotype's extent for a nonempty F.
Formula stereotype_theory(const KnowledgeBase& kb, InfoSet given);

/// Canonical formula of F' for F = models(alpha); its classical consequences over the
/// declared space are exactly the nonmonotonic consequences of alpha.
Formula consequence_closure(const KnowledgeBase& kb, const Formula& alpha);

/// Distances and choices for every information set of a KB, computed once.
///
/// Ties are recorded rather than thrown so that checkers can report them.
class ChoiceTable {
 public:
  /// Throws ScaleLimit when the space has more than `max_worlds` worlds.
  explicit ChoiceTable(const KnowledgeBase& kb, std::size_t max_worlds = 20);

  std::size_t world_count() const { return worlds_; }
  std::size_t stereotype_count() const { return stereotypes_; }
  /// Number of information sets, 2^|W|.
  std::size_t set_count() const { return std::size_t{1} << worlds_; }

  const DistanceValue& distance(InfoSet given, std::size_t stereotype) const {
    return distances_[given.bits() * stereotypes_ + stereotype];
  }
  InfoSet extent(std::size_t stereotype) const { return extents_[stereotype]; }

  /// True when a nonempty set has several co-minimal stereotypes.
  bool tied(InfoSet given) const { return !given.empty() && !chosen_[given.bits()]; }
  /// Unique closest stereotype; empty for the empty set and for ties.
  std::optional<std::size_t> chosen(InfoSet given) const { return chosen_[given.bits()]; }
  std::vector<std::size_t> co_minimal(InfoSet given) const;
  /// F ∩ S^F; the empty set for the empty set and for ties.
  InfoSet consequences(InfoSet given) const { return consequences_[given.bits()]; }
  /// True when no nonempty set is tied.
  bool unique_everywhere() const { return unique_; }

 private:
  std::size_t worlds_;
  std::size_t stereotypes_;
  std::vector<InfoSet> extents_;
  std::vector<DistanceValue> distances_;
  std::vector<std::optional<std::size_t>> chosen_;
  std::vector<InfoSet> consequences_;
  bool unique_ = true;
};

}  // namespace stereo
