#include "stereo/generators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "stereo/inference.hpp"
#include "stereo/representability.hpp"

namespace stereo::gen {

namespace {

std::vector<Stereotype> named(const std::vector<InfoSet>& extents) {
  std::vector<Stereotype> out;
  for (std::size_t i = 0; i < extents.size(); ++i) out.push_back({"S" + std::to_string(i), extents[i]});
  return out;
}

std::vector<InfoSet> random_extents(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  const std::uint64_t sets = (std::uint64_t{1} << n) - 1;
  if (k == 0 || k > sets) throw std::invalid_argument("stereotype count out of range");
  std::vector<std::uint64_t> masks(sets);
  std::iota(masks.begin(), masks.end(), 1);
  std::shuffle(masks.begin(), masks.end(), rng);
  masks.resize(k);
  std::vector<InfoSet> out;
  for (auto m : masks) out.emplace_back(m);
  return out;
}

void require_table_size(std::size_t n) {
  if (n == 0 || n > kMaxTableWorlds) throw std::invalid_argument("table KBs need 1 to 16 worlds");
}

}  // namespace

KnowledgeBase example1(std::size_t n) {
  auto space = binary_space(n);
  const InfoSet all = space.all();
  return KnowledgeBase(std::move(space), {{"S0", all}}, ConstantFamily{});
}

KnowledgeBase example2(std::size_t n) {
  if (n == 0 || n > 16) throw std::invalid_argument("example2 supports 1 to 16 worlds");
  std::vector<Stereotype> st;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) st.push_back({"S" + std::to_string(m), InfoSet(m)});
  return KnowledgeBase(binary_space(n), std::move(st), CardinalityFamily{});
}

KnowledgeBase example3(std::size_t n) {
  std::vector<Stereotype> st;
  MinWorldFamily family;
  for (std::size_t i = 0; i < n; ++i) {
    st.push_back({"S" + std::to_string(i), InfoSet::singleton(i)});
    family.rank.push_back(i);
  }
  return KnowledgeBase(binary_space(n), std::move(st), std::move(family));
}

KnowledgeBase example4(std::size_t n) {
  std::vector<InfoSet> blocks;
  for (std::size_t i = 0; i < n; i += 2) {
    InfoSet b = InfoSet::singleton(i);
    if (i + 1 < n) b |= InfoSet::singleton(i + 1);
    blocks.push_back(b);
  }
  PartitionCoverFamily family;
  family.order.resize(blocks.size());
  std::iota(family.order.begin(), family.order.end(), 0);
  return KnowledgeBase(binary_space(n), named(blocks), std::move(family));
}

KnowledgeBase random_table(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  require_table_size(n);
  auto extents = random_extents(n, k, rng);
  TableFamily table;
  const std::size_t cells = (std::size_t{1} << n) * k;
  std::vector<std::int64_t> values(cells);
  std::iota(values.begin(), values.end(), 0);
  std::shuffle(values.begin(), values.end(), rng);
  for (auto v : values) table.values.emplace_back(v);
  return KnowledgeBase(binary_space(n), named(extents), std::move(table));
}

KnowledgeBase random_monotone_table(std::size_t n, std::size_t k, std::mt19937_64& rng, bool consistent) {
  require_table_size(n);
  if (n > 6) throw std::invalid_argument("monotone tables support at most 6 worlds");
  while (true) {
    auto extents = random_extents(n, k, rng);
    const ConstraintGraph graph(n, extents, {}, /*include_empty_set=*/true);
    const auto succ = graph.condensation();
    const std::size_t comps = graph.component_count();

    // Kahn over the condensation from the sinks up: a class gets the next value once all
    // the classes it must not be below have one.
    std::vector<std::size_t> pending(comps);
    std::vector<std::vector<std::size_t>> pred(comps);
    for (std::size_t c = 0; c < comps; ++c) {
      pending[c] = succ[c].size();
      for (auto d : succ[c]) pred[d].push_back(c);
    }
    std::vector<std::size_t> ready;
    for (std::size_t c = 0; c < comps; ++c) {
      if (pending[c] == 0) ready.push_back(c);
    }
    std::vector<std::int64_t> value(comps, 0);
    std::int64_t next = 0;
    while (!ready.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
      const std::size_t at = pick(rng);
      const std::size_t c = ready[at];
      ready[at] = ready.back();
      ready.pop_back();
      value[c] = next++;
      for (auto p : pred[c]) {
        if (--pending[p] == 0) ready.push_back(p);
      }
    }
    TableFamily table;
    table.values.reserve(graph.node_count());
    for (std::size_t u = 0; u < graph.node_count(); ++u) table.values.emplace_back(value[graph.components()[u]]);
    KnowledgeBase kb(binary_space(n), named(extents), std::move(table));
    if (!consistent) return kb;
    const ChoiceTable choices(kb);
    bool ok = true;
    for (std::size_t bits = 1; bits < choices.set_count() && ok; ++bits) {
      ok = !choices.consequences(InfoSet(bits)).empty();
    }
    if (ok) return kb;
  }
}

KnowledgeBase random_block_rank(std::size_t n, std::mt19937_64& rng) {
  require_table_size(n);
  std::vector<std::size_t> block_of(n);
  std::size_t blocks = 0;
  for (std::size_t w = 0; w < n; ++w) {
    std::uniform_int_distribution<std::size_t> pick(0, blocks);
    block_of[w] = pick(rng);
    if (block_of[w] == blocks) ++blocks;
  }
  std::vector<InfoSet> extents(blocks);
  for (std::size_t w = 0; w < n; ++w) extents[block_of[w]] |= InfoSet::singleton(w);
  std::vector<std::int64_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);

  TableFamily table;
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << n); ++f) {
    for (std::size_t s = 0; s < blocks; ++s) {
      const InfoSet meet = InfoSet(f) & extents[s];
      if (meet.empty()) {
        table.values.push_back(DistanceValue::infinity());
        continue;
      }
      std::int64_t best = static_cast<std::int64_t>(n);
      for (auto w : meet.members()) best = std::min(best, rank[w]);
      table.values.emplace_back(best);
    }
  }
  return KnowledgeBase(binary_space(n), named(extents), std::move(table));
}

}  // namespace stereo::gen
