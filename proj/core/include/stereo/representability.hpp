#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stereo/info_set.hpp"
#include "stereo/knowledge_base.hpp"
#include "stereo/logic.hpp"

namespace stereo {

/// Abstract consequence relation on a finite space: F ↦ f(F), with f(F) a nonempty subset
/// of F for every nonempty F. `choice` is indexed by F.bits(); choice[0] is the empty set.
struct SelectionFunction {
  std::size_t world_count = 0;
  std::vector<InfoSet> choice;

  InfoSet operator()(InfoSet given) const { return choice[given.bits()]; }
  std::size_t set_count() const { return std::size_t{1} << world_count; }

  /// Totality, f(F) ⊆ F and f(F) nonempty; throws std::invalid_argument otherwise.
  void validate() const;

  friend bool operator==(const SelectionFunction&, const SelectionFunction&) = default;
};

/// The selection F ↦ F ∩ S^F of a KB. Throws NoUniqueMinimum, or InconsistentJump when
/// some nonempty F has an empty F ∩ S^F.
SelectionFunction selection_of(const KnowledgeBase& kb);

struct CumulativityResult {
  bool cumulative = true;
  std::optional<std::pair<InfoSet, InfoSet>> witness;  // (F, G) with f(F) ⊆ G ⊆ F, f(G) ≠ f(F)
};

/// ∀F, G: f(F) ⊆ G ⊆ F implies f(G) = f(F). The witness is the first failing (F, G).
CumulativityResult is_cumulative(const SelectionFunction& f);

/// Order constraints on distance values d(F, S) imposed by an assignment σ of stereotypes.
///
/// Nodes are pairs (F, S). An edge u → v states d(v) ≤ d(u) when weak (u.F∩u.S ⊆ v.F∩v.S
/// and v.S−v.F ⊆ u.S−u.F) and d(v) < d(u) when strict (v = (F, σ(F)), u = (F, S), S ≠ σ(F)).
class ConstraintGraph {
 public:
  /// `sigma[F.bits()]` is the chosen stereotype index for each nonempty F; pass an empty
  /// vector for the weak constraints alone. With `include_empty_set` the nodes (∅, S) are
  /// added, which only carry weak constraints.
  ConstraintGraph(std::size_t world_count, std::vector<InfoSet> stereotypes, const std::vector<std::size_t>& sigma,
                  bool include_empty_set = false);

  std::size_t node_count() const { return nodes_.size(); }
  /// (F, stereotype index) of a node.
  const std::pair<InfoSet, std::size_t>& node(std::size_t index) const { return nodes_[index]; }
  std::optional<std::size_t> node_index(InfoSet set, std::size_t stereotype) const;

  /// Edges in ascending (from, to) order.
  const std::vector<std::pair<std::size_t, std::size_t>>& weak_edges() const { return weak_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& strict_edges() const { return strict_; }

  /// Strongly connected component of each node, numbered in reverse topological order
  /// (sinks first).
  const std::vector<std::size_t>& components() const { return component_; }
  std::size_t component_count() const { return component_count_; }

  /// First strict edge (in canonical order) whose endpoints share a component.
  std::optional<std::pair<std::size_t, std::size_t>> strict_edge_in_cycle() const;
  bool feasible() const { return !strict_edge_in_cycle(); }

  /// Integer distances realizing every constraint: 0 on sinks, otherwise one more than the
  /// largest successor in another component. Requires feasible().
  std::vector<std::int64_t> levels() const;

  /// Successor components of each component, sorted and deduplicated.
  std::vector<std::vector<std::size_t>> condensation() const;

 private:
  std::size_t world_count_;
  std::vector<InfoSet> stereotypes_;
  std::vector<std::pair<InfoSet, std::size_t>> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> weak_;
  std::vector<std::pair<std::size_t, std::size_t>> strict_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> component_;
  std::size_t component_count_ = 0;
};

/// True when the monotonicity law forces d(F, S) ≤ d(F', S'):
/// F' ∩ S' ⊆ F ∩ S and S − F ⊆ S' − F'.
bool forces_at_most(InfoSet f, InfoSet s, InfoSet f2, InfoSet s2);

enum class Representability { Yes, No, Unknown };
const char* to_string(Representability r);

/// Why a stereotype set cannot realize a selection function.
struct NoCertificate {
  enum class Reason { None, EmptyChoice, Cycle, Budget } reason = Reason::None;
  /// EmptyChoice: the F no stereotype can serve. Cycle: the F whose assignment first closed a
  /// cycle through a strict edge.
  InfoSet set;
  /// Cycle: the strict edge d(low) < d(high) that became contradictory, as (F, S) pairs.
  std::pair<InfoSet, std::size_t> low{};
  std::pair<InfoSet, std::size_t> high{};
  /// Partial assignments refuted during the search.
  std::uint64_t refuted = 0;
};

struct RepresentabilityResult {
  Representability verdict = Representability::Unknown;
  /// On Yes: σ indexed by F.bits(); entry 0 is unused.
  std::optional<std::vector<std::size_t>> model;
  NoCertificate certificate;
  /// Stereotype assignments tried; each costs one budget unit.
  std::uint64_t steps = 0;
};

inline constexpr std::size_t kNoStereotype = static_cast<std::size_t>(-1);

/// Searches σ(F) ∈ {S : F ∩ S = f(F)} for every nonempty F such that the constraint graph
/// has no strict edge inside a cycle. Returns Unknown once more than `budget` steps are used.
RepresentabilityResult is_representable(const SelectionFunction& f, const std::vector<InfoSet>& stereotypes,
                                        std::uint64_t budget);

/// TABLE knowledge base realizing a feasible σ: distances are the constraint graph levels
/// (empty-set rows included). Stereotypes are named S0, S1, ... in the given order.
KnowledgeBase table_kb_from_model(const WorldSpace& space, const std::vector<InfoSet>& stereotypes,
                                  const std::vector<std::size_t>& sigma);

// {{{ bounded search for nonrepresentable cumulative selections

struct SearchOptions {
  std::size_t world_count = 2;
  /// Largest candidate stereotype set; 0 means every subset of the nonempty-set lattice.
  std::size_t max_stereotypes = 0;
  std::uint64_t budget = 100'000'000;
  unsigned threads = 0;
};

struct SetVerdict {
  std::vector<InfoSet> stereotypes;
  Representability verdict;
  NoCertificate certificate;
};

struct SearchFinding {
  std::size_t index;  // position of the selection in canonical enumeration order
  SelectionFunction selection;
  std::vector<SetVerdict> verdicts;
};

struct SearchResult {
  std::size_t world_count = 0;
  std::size_t max_stereotypes = 0;
  std::uint64_t budget = 0;
  std::uint64_t candidate_sets = 0;  // candidate stereotype sets per selection
  std::uint64_t examined = 0;        // cumulative selections decided within the budget
  std::uint64_t representable = 0;
  std::uint64_t undecided = 0;       // some candidate set returned Unknown, none Yes
  std::vector<SearchFinding> found;
  /// Set when the budget ran out: selections from `tail_start` on were not decided.
  bool unknown_tail = false;
  std::size_t tail_start = 0;
  std::uint64_t steps = 0;
};

/// Every cumulative selection function on `world_count` worlds, in canonical order: the
/// sequence (f(1), f(2), ..., f(2^n - 1)) compared lexicographically by bit pattern.
/// `visit` returns false to stop early.
void for_each_cumulative_selection(std::size_t world_count, const std::function<bool(const SelectionFunction&)>& visit);

/// Candidate stereotype sets in canonical order: by size, then lexicographically by masks.
std::vector<std::vector<InfoSet>> candidate_stereotype_sets(std::size_t world_count, std::size_t max_stereotypes);

/// Cumulative selections that no candidate stereotype set represents. Results are identical
/// for every thread count; `on_found` is called in canonical order as findings are settled.
SearchResult search_nonrepresentable(const SearchOptions& options,
                                     const std::function<void(const SearchFinding&)>& on_found = {});

/// {selection: {"w0,w1": [..], ...}, verdicts: [{stereotypes, verdict, certificate}]}.
std::string evidence_json(const SearchFinding& finding, std::size_t world_count);
/// Whole search result with findings and summary; no timing, byte-stable.
std::string to_json(const SearchResult& result);

// }}}

}  // namespace stereo
