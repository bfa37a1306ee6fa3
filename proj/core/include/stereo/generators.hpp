#pragma once

#include <cstddef>
#include <random>

#include "stereo/knowledge_base.hpp"

// Parametric versions of the demo KBs and random KB families used by tests and benchmarks.
// All spaces are binary_space(n): worlds w0..w{n-1}.
namespace stereo::gen {

/// One stereotype covering W, constant distance.
KnowledgeBase example1(std::size_t n);
/// Every nonempty subset as a stereotype (named S<mask>), cardinality distance.
KnowledgeBase example2(std::size_t n);
/// Singleton stereotypes with rank(wi) = i.
KnowledgeBase example3(std::size_t n);
/// Stereotypes {w0,w1}, {w2,w3}, ... (the last one a singleton for odd n), partition-cover
/// distance in that order.
KnowledgeBase example4(std::size_t n);

/// k distinct random nonempty stereotypes with pairwise distinct table values, so every
/// F has a unique best stereotype. Nothing else is guaranteed.
KnowledgeBase random_table(std::size_t n, std::size_t k, std::mt19937_64& rng);

/// k distinct random stereotypes with a table that satisfies the monotonicity law: values
/// come from a random linear extension of the forced order on (F, S) pairs, one value per
/// strongly connected class. Minima are unique. With `consistent`, stereotype sets are
/// redrawn until F ∩ S^F is nonempty for every nonempty F.
KnowledgeBase random_monotone_table(std::size_t n, std::size_t k, std::mt19937_64& rng, bool consistent = false);

/// Random partition of W into stereotypes and a random injective rank; d(F, S) is the
/// least rank in F ∩ S, or infinity when they are disjoint. Satisfies the monotonicity law
/// and the union law for every draw.
KnowledgeBase random_block_rank(std::size_t n, std::mt19937_64& rng);

}  // namespace stereo::gen
