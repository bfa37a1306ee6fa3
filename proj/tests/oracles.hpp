#pragma once

// Slow, independent re-implementations used as test oracles. They work on std::set of
// world indices and recompute everything from the KB's parameters, sharing no code with
// the library beyond the KB accessors.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "stereo/knowledge_base.hpp"

namespace oracle {

using Worlds = std::set<std::size_t>;

inline Worlds to_set(stereo::InfoSet s) {
  Worlds out;
  for (std::size_t i = 0; i < 64; ++i) {
    if ((s.bits() >> i) & 1U) out.insert(i);
  }
  return out;
}

inline std::uint64_t to_bits(const Worlds& s) {
  std::uint64_t b = 0;
  for (auto i : s) b |= std::uint64_t{1} << i;
  return b;
}

inline Worlds meet(const Worlds& a, const Worlds& b) {
  Worlds out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline Worlds minus(const Worlds& a, const Worlds& b) {
  Worlds out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline Worlds join(const Worlds& a, const Worlds& b) {
  Worlds out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline bool within(const Worlds& a, const Worlds& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

/// Distance recomputed from the family parameters.
inline stereo::DistanceValue distance(const stereo::KnowledgeBase& kb, const Worlds& f, std::size_t s) {
  using namespace stereo;
  const Worlds ext = to_set(kb.stereotype(s).extent);
  const auto k = static_cast<std::int64_t>(kb.stereotype_count());
  const auto& fam = kb.distance();
  if (std::holds_alternative<ConstantFamily>(fam)) return 0;
  if (std::holds_alternative<CardinalityFamily>(fam)) {
    return static_cast<std::int64_t>(minus(ext, f).size()) - static_cast<std::int64_t>(meet(ext, f).size());
  }
  if (const auto* mw = std::get_if<MinWorldFamily>(&fam)) {
    const std::size_t w = *ext.begin();
    if (!f.count(w)) return DistanceValue::infinity();
    return static_cast<std::int64_t>(mw->rank[w]);
  }
  if (const auto* pc = std::get_if<PartitionCoverFamily>(&fam)) {
    const auto pos = static_cast<std::int64_t>(std::find(pc->order.begin(), pc->order.end(), s) - pc->order.begin());
    return DistanceValue(static_cast<std::int64_t>(minus(ext, f).size()) * k + pos, k);
  }
  const auto& table = std::get<TableFamily>(fam);
  return table.values[to_bits(f) * kb.stereotype_count() + s];
}

/// Unique closest stereotype, or nullopt on a tie.
inline std::optional<std::size_t> choice(const stereo::KnowledgeBase& kb, const Worlds& f) {
  std::optional<std::size_t> best;
  bool tie = false;
  for (std::size_t s = 0; s < kb.stereotype_count(); ++s) {
    if (!best) {
      best = s;
    } else if (distance(kb, f, s) < distance(kb, f, *best)) {
      best = s;
      tie = false;
    } else if (distance(kb, f, s) == distance(kb, f, *best)) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return best;
}

inline std::vector<Worlds> all_subsets(std::size_t n) {
  std::vector<Worlds> out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.push_back(to_set(stereo::InfoSet(b)));
  return out;
}

/// Violations of the monotonicity law over all quadruples.
inline std::uint64_t monotonicity_failures(const stereo::KnowledgeBase& kb) {
  const auto sets = all_subsets(kb.space().size());
  std::uint64_t failures = 0;
  for (const auto& f : sets) {
    for (std::size_t s = 0; s < kb.stereotype_count(); ++s) {
      const Worlds es = to_set(kb.stereotype(s).extent);
      for (const auto& f2 : sets) {
        for (std::size_t s2 = 0; s2 < kb.stereotype_count(); ++s2) {
          const Worlds es2 = to_set(kb.stereotype(s2).extent);
          if (within(meet(f2, es2), meet(f, es)) && within(minus(es, f), minus(es2, f2)) &&
              distance(kb, f2, s2) < distance(kb, f, s)) {
            ++failures;
          }
        }
      }
    }
  }
  return failures;
}

/// Violations of d(F ∪ G, S) = min{d(F, S), d(G, S)} over unordered pairs F, G (F = G included).
inline std::uint64_t union_law_failures(const stereo::KnowledgeBase& kb) {
  const auto sets = all_subsets(kb.space().size());
  std::uint64_t failures = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i; j < sets.size(); ++j) {
      for (std::size_t s = 0; s < kb.stereotype_count(); ++s) {
        const auto lhs = distance(kb, join(sets[i], sets[j]), s);
        const auto rhs = std::min(distance(kb, sets[i], s), distance(kb, sets[j], s));
        if (!(lhs == rhs)) ++failures;
      }
    }
  }
  return failures;
}

/// Feasibility of a constraint digraph by Floyd-Warshall reachability: no strict edge
/// (u, v) may have v reaching back to u.
inline bool feasible(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& weak,
                     const std::vector<std::pair<std::size_t, std::size_t>>& strict) {
  std::vector<std::vector<bool>> reach(nodes, std::vector<bool>(nodes, false));
  for (std::size_t i = 0; i < nodes; ++i) reach[i][i] = true;
  for (const auto& [u, v] : weak) reach[u][v] = true;
  for (const auto& [u, v] : strict) reach[u][v] = true;
  for (std::size_t m = 0; m < nodes; ++m) {
    for (std::size_t i = 0; i < nodes; ++i) {
      if (!reach[i][m]) continue;
      for (std::size_t j = 0; j < nodes; ++j) {
        if (reach[m][j]) reach[i][j] = true;
      }
    }
  }
  return std::none_of(strict.begin(), strict.end(), [&](const auto& e) { return reach[e.second][e.first]; });
}

}  // namespace oracle
