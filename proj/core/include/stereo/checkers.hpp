#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stereo/distance_value.hpp"
#include "stereo/info_set.hpp"
#include "stereo/knowledge_base.hpp"

namespace stereo {

enum class Verdict { Pass, Fail, NotApplicable };

/// "PASS", "FAIL", "NOT_APPLICABLE".
const char* to_string(Verdict verdict);

enum class KlmProperty { Reflexivity, Lle, RwAnd, Cut, CautiousMonotony, Cumulativity, Or };

inline constexpr KlmProperty kAllKlmProperties[] = {
    KlmProperty::Reflexivity, KlmProperty::Lle,          KlmProperty::RwAnd, KlmProperty::Cut,
    KlmProperty::CautiousMonotony, KlmProperty::Cumulativity, KlmProperty::Or};

/// "reflexivity", "lle", "rw-and", "cut", "cautious-monotony", "cumulativity", "or".
const char* to_string(KlmProperty property);
std::optional<KlmProperty> parse_klm_property(std::string_view name);

struct StereotypeRef {
  std::size_t index;
  friend bool operator==(const StereotypeRef&, const StereotypeRef&) = default;
};

struct StereotypeGroup {
  std::vector<std::size_t> indices;
  friend bool operator==(const StereotypeGroup&, const StereotypeGroup&) = default;
};

using WitnessValue = std::variant<InfoSet, StereotypeRef, StereotypeGroup, DistanceValue>;

struct WitnessField {
  std::string label;
  WitnessValue value;
  friend bool operator==(const WitnessField&, const WitnessField&) = default;
};

/// One counterexample: the sets, stereotypes and values instantiating a failed condition.
struct Witness {
  std::vector<WitnessField> fields;

  /// Accessors by label; throw std::out_of_range on a missing label or wrong kind.
  InfoSet set(std::string_view label) const;
  std::size_t stereotype(std::string_view label) const;
  std::vector<std::size_t> stereotypes(std::string_view label) const;
  DistanceValue value(std::string_view label) const;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckStats {
  std::uint64_t cases = 0;     // quantification instances examined
  std::uint64_t failures = 0;  // instances violating the property; witnesses may be truncated
  double elapsed_ms = 0;
};

struct CheckReport {
  std::string property;
  std::string universe;
  Verdict verdict = Verdict::Pass;
  std::vector<Witness> witnesses;  // in canonical enumeration order
  CheckStats stats;
};

struct CheckOptions {
  /// Maximum quantification instances a single sweep may examine.
  std::uint64_t budget = 100'000'000;
  /// Lifts the default size limits (|W| <= 6, at most 8 stereotypes); the budget still applies.
  bool override_scale_limit = false;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
  /// Witnesses kept per report; the failure count is always exact.
  std::size_t max_witnesses = 64;
};

inline constexpr std::size_t kDefaultMaxSweepWorlds = 6;
inline constexpr std::size_t kDefaultMaxSweepStereotypes = 8;

CheckReport check_assumption_zero(const KnowledgeBase& kb, const CheckOptions& options = {});
CheckReport check_eq2(const KnowledgeBase& kb, const CheckOptions& options = {});
/// Operational form: d(F ∪ F', S) = min{d(F, S), d(F', S)} for all F, F', S.
CheckReport check_assumption_four(const KnowledgeBase& kb, const CheckOptions& options = {});
CheckReport check_klm(const KnowledgeBase& kb, KlmProperty property, const CheckOptions& options = {});
CheckReport verify_theorem1(const KnowledgeBase& kb, const CheckOptions& options = {});
CheckReport verify_theorem2(const KnowledgeBase& kb, const CheckOptions& options = {});
CheckReport check_tree_structure(const KnowledgeBase& kb, const CheckOptions& options = {});

/// Assumption zero, distance monotonicity, assumption four, tree structure, then every KLM property.
std::vector<CheckReport> check_all(const KnowledgeBase& kb, const CheckOptions& options = {});

std::string to_text(const CheckReport& report, const KnowledgeBase& kb, std::size_t shown_witnesses = 5);
/// {property, universe, verdict, witnesses[], stats{cases, failures, elapsed_ms}}.
std::string to_json(const CheckReport& report, const KnowledgeBase& kb, bool include_timing = true);
std::string to_json(const std::vector<CheckReport>& reports, const KnowledgeBase& kb, bool include_timing = true);

}  // namespace stereo
