#include "stereo/representability.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stereo/error.hpp"
#include "stereo/inference.hpp"
#include "sweep.hpp"

namespace stereo {

// {{{ selection functions

void SelectionFunction::validate() const {
  if (world_count > 20) throw std::invalid_argument("selection functions support at most 20 worlds");
  if (choice.size() != set_count()) throw std::invalid_argument("selection is not total");
  if (!choice[0].empty()) throw std::invalid_argument("f(∅) must be empty");
  for (std::size_t bits = 1; bits < choice.size(); ++bits) {
    const InfoSet f(bits);
    if (choice[bits].empty() || !choice[bits].subset_of(f)) {
      throw std::invalid_argument("f(F) must be a nonempty subset of F for F=" + std::to_string(bits));
    }
  }
}

SelectionFunction selection_of(const KnowledgeBase& kb) {
  const ChoiceTable table(kb);
  SelectionFunction f{kb.space().size(), std::vector<InfoSet>(table.set_count())};
  for (std::size_t bits = 1; bits < table.set_count(); ++bits) {
    const InfoSet given(bits);
    if (table.tied(given)) {
      std::vector<std::string> names;
      for (auto i : table.co_minimal(given)) names.push_back(kb.stereotype(i).name);
      throw NoUniqueMinimum(std::move(names));
    }
    f.choice[bits] = table.consequences(given);
    if (f.choice[bits].empty()) {
      throw InconsistentJump("F=" + kb.space().format(given) + " has an empty intersection with its stereotype " +
                             kb.stereotype(*table.chosen(given)).name);
    }
  }
  return f;
}

namespace {

template <typename Fn>
void for_each_between(InfoSet low, InfoSet high, Fn&& fn) {
  const std::uint64_t free = (high - low).bits();
  std::uint64_t sub = 0;
  while (true) {
    if (!fn(InfoSet(low.bits() | sub))) return;
    if (sub == free) return;
    sub = (sub - free) & free;
  }
}

}  // namespace

CumulativityResult is_cumulative(const SelectionFunction& f) {
  CumulativityResult result;
  for (std::size_t bits = 1; bits < f.set_count() && result.cumulative; ++bits) {
    const InfoSet given(bits);
    const InfoSet chosen = f(given);
    for_each_between(chosen, given, [&](InfoSet g) {
      if (f(g) != chosen) {
        result.cumulative = false;
        result.witness.emplace(given, g);
        return false;
      }
      return true;
    });
  }
  return result;
}

void for_each_cumulative_selection(std::size_t world_count,
                                   const std::function<bool(const SelectionFunction&)>& visit) {
  if (world_count > 6) throw std::invalid_argument("enumeration supports at most 6 worlds");
  SelectionFunction f{world_count, std::vector<InfoSet>(std::size_t{1} << world_count)};
  const std::size_t last = f.set_count() - 1;
  bool stop = false;
  // Assigns f at `bits` given every proper subset (all smaller bit patterns) is assigned.
  std::function<void(std::size_t)> assign = [&](std::size_t bits) {
    if (bits > last) {
      stop = !visit(f);
      return;
    }
    const InfoSet given(bits);
    for (std::uint64_t sub = 1; sub <= bits && !stop; ++sub) {
      if ((sub & ~bits) != 0) continue;
      const InfoSet chosen(sub);
      bool ok = true;
      for_each_between(chosen, given, [&](InfoSet g) {
        if (g != given && f(g) != chosen) ok = false;
        return ok;
      });
      if (!ok) continue;
      f.choice[bits] = chosen;
      assign(bits + 1);
    }
    f.choice[bits] = InfoSet{};
  };
  assign(1);
}

// }}}
// {{{ constraint graph

bool forces_at_most(InfoSet f, InfoSet s, InfoSet f2, InfoSet s2) {
  return (f2 & s2).subset_of(f & s) && (s - f).subset_of(s2 - f2);
}

ConstraintGraph::ConstraintGraph(std::size_t world_count, std::vector<InfoSet> stereotypes,
                                 const std::vector<std::size_t>& sigma, bool include_empty_set)
    : world_count_(world_count), stereotypes_(std::move(stereotypes)) {
  const std::size_t sets = std::size_t{1} << world_count_;
  const std::size_t k = stereotypes_.size();
  for (std::size_t bits = include_empty_set ? 0 : 1; bits < sets; ++bits) {
    for (std::size_t s = 0; s < k; ++s) nodes_.emplace_back(InfoSet(bits), s);
  }
  const std::size_t n = nodes_.size();
  adjacency_.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto [fu, su] = nodes_[u];
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      const auto [fv, sv] = nodes_[v];
      if (forces_at_most(fv, stereotypes_[sv], fu, stereotypes_[su])) {
        weak_.emplace_back(u, v);
        adjacency_[u].push_back(v);
      }
    }
  }
  if (!sigma.empty()) {
    for (std::size_t bits = 1; bits < sets; ++bits) {
      const std::size_t chosen = sigma.at(bits);
      if (chosen >= k) throw std::invalid_argument("sigma must choose a stereotype for every nonempty set");
      const auto to = *node_index(InfoSet(bits), chosen);
      for (std::size_t s = 0; s < k; ++s) {
        if (s == chosen) continue;
        const auto from = *node_index(InfoSet(bits), s);
        strict_.emplace_back(from, to);
        adjacency_[from].push_back(to);
      }
    }
    std::sort(strict_.begin(), strict_.end());
  }

  // Iterative Tarjan; components come out sinks first.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> frames;  // (node, next edge position)
  component_.assign(n, 0);
  std::size_t counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adjacency_[v].size()) {
        const std::size_t w = adjacency_[v][pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component_[w] = component_count_;
          if (w == done) break;
        }
        ++component_count_;
      }
    }
  }
}

std::optional<std::size_t> ConstraintGraph::node_index(InfoSet set, std::size_t stereotype) const {
  const std::size_t k = stereotypes_.size();
  if (stereotype >= k || nodes_.empty()) return std::nullopt;
  const std::size_t first = nodes_.front().first.bits();
  if (set.bits() < first || set.bits() >= (std::size_t{1} << world_count_)) return std::nullopt;
  return (set.bits() - first) * k + stereotype;
}

std::optional<std::pair<std::size_t, std::size_t>> ConstraintGraph::strict_edge_in_cycle() const {
  for (const auto& e : strict_) {
    if (component_[e.first] == component_[e.second]) return e;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> ConstraintGraph::condensation() const {
  std::vector<std::vector<std::size_t>> out(component_count_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u) {
    for (auto v : adjacency_[u]) {
      if (component_[u] != component_[v]) out[component_[u]].push_back(component_[v]);
    }
  }
  for (auto& succ : out) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return out;
}

std::vector<std::int64_t> ConstraintGraph::levels() const {
  if (!feasible()) throw std::logic_error("constraint graph has a strict edge inside a cycle");
  const auto succ = condensation();
  std::vector<std::int64_t> comp_level(component_count_, 0);
  for (std::size_t c = 0; c < component_count_; ++c) {
    for (auto d : succ[c]) comp_level[c] = std::max(comp_level[c], comp_level[d] + 1);
  }
  std::vector<std::int64_t> out(nodes_.size());
  for (std::size_t u = 0; u < nodes_.size(); ++u) out[u] = comp_level[component_[u]];
  return out;
}

// }}}
// {{{ representability oracle

const char* to_string(Representability r) {
  switch (r) {
    case Representability::Yes: return "YES";
    case Representability::No: return "NO";
    case Representability::Unknown: return "UNKNOWN";
  }
  return "?";
}

namespace {

/// Incremental transitive closure of the forced "≤" relation over nodes (F, S), F nonempty.
class OrderClosure {
 public:
  OrderClosure(std::size_t nodes) : nodes_(nodes), words_((nodes + 63) / 64), rows_(nodes * words_, 0) {}

  bool get(std::size_t a, std::size_t b) const { return (rows_[a * words_ + b / 64] >> (b % 64)) & 1U; }
  void set(std::size_t a, std::size_t b) { rows_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64); }

  /// Records lo ≤ hi and re-closes: everything below lo is now below everything above hi.
  void add(std::size_t lo, std::size_t hi) {
    if (get(lo, hi)) return;
    std::vector<std::uint64_t> above(rows_.begin() + static_cast<std::ptrdiff_t>(hi * words_),
                                     rows_.begin() + static_cast<std::ptrdiff_t>((hi + 1) * words_));
    for (std::size_t a = 0; a < nodes_; ++a) {
      if (!get(a, lo)) continue;
      for (std::size_t w = 0; w < words_; ++w) rows_[a * words_ + w] |= above[w];
    }
  }

 private:
  std::size_t nodes_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

struct Search {
  const SelectionFunction& f;
  const std::vector<InfoSet>& stereotypes;
  std::uint64_t budget;
  std::size_t k;
  std::vector<std::vector<std::size_t>> choices;  // by F bits
  std::vector<std::size_t> sigma;
  std::vector<std::pair<std::size_t, std::size_t>> strict;  // (lo, hi): d(lo) < d(hi)
  RepresentabilityResult result;
  bool out_of_budget = false;

  std::size_t node(std::size_t bits, std::size_t s) const { return (bits - 1) * k + s; }

  bool run(std::size_t bits, const OrderClosure& closure) {
    if (bits == f.set_count()) return true;
    for (const std::size_t chosen : choices[bits]) {
      if (++result.steps > budget) {
        out_of_budget = true;
        return false;
      }
      OrderClosure next = closure;
      const std::size_t mark = strict.size();
      for (std::size_t s = 0; s < k; ++s) {
        if (s == chosen) continue;
        strict.emplace_back(node(bits, chosen), node(bits, s));
        next.add(node(bits, chosen), node(bits, s));
      }
      const auto conflict = std::find_if(strict.begin(), strict.end(),
                                         [&](const auto& e) { return next.get(e.second, e.first); });
      if (conflict == strict.end()) {
        sigma[bits] = chosen;
        if (run(bits + 1, next)) return true;
        if (out_of_budget) return false;
      } else {
        auto& cert = result.certificate;
        if (cert.reason == NoCertificate::Reason::None) {
          cert.reason = NoCertificate::Reason::Cycle;
          cert.set = InfoSet(bits);
          const auto decode = [&](std::size_t u) { return std::pair{InfoSet(u / k + 1), u % k}; };
          cert.low = decode(conflict->first);
          cert.high = decode(conflict->second);
        }
        ++cert.refuted;
      }
      strict.resize(mark);
    }
    return false;
  }
};

}  // namespace

RepresentabilityResult is_representable(const SelectionFunction& f, const std::vector<InfoSet>& stereotypes,
                                        std::uint64_t budget) {
  f.validate();
  for (auto s : stereotypes) {
    if (s.empty() || !s.subset_of(InfoSet::full(f.world_count))) {
      throw std::invalid_argument("stereotypes must be nonempty subsets of the space");
    }
  }
  Search search{f, stereotypes, budget, stereotypes.size(), {}, {}, {}, {}};
  search.result.steps = 1;
  search.choices.resize(f.set_count());
  for (std::size_t bits = 1; bits < f.set_count(); ++bits) {
    const InfoSet given(bits);
    for (std::size_t s = 0; s < stereotypes.size(); ++s) {
      if ((given & stereotypes[s]) == f(given)) search.choices[bits].push_back(s);
    }
    if (search.choices[bits].empty()) {
      search.result.verdict = Representability::No;
      search.result.certificate.reason = NoCertificate::Reason::EmptyChoice;
      search.result.certificate.set = given;
      return search.result;
    }
  }
  if (search.result.steps > budget) {
    search.result.certificate.reason = NoCertificate::Reason::Budget;
    return search.result;
  }

  const std::size_t k = stereotypes.size();
  const std::size_t nodes = (f.set_count() - 1) * k;
  OrderClosure closure(nodes);
  for (std::size_t u = 0; u < nodes; ++u) {
    const InfoSet fu(u / k + 1);
    const InfoSet su = stereotypes[u % k];
    for (std::size_t v = 0; v < nodes; ++v) {
      if (forces_at_most(fu, su, InfoSet(v / k + 1), stereotypes[v % k])) closure.set(u, v);
    }
  }
  search.sigma.assign(f.set_count(), kNoStereotype);
  if (search.run(1, closure)) {
    search.result.verdict = Representability::Yes;
    search.result.model = search.sigma;
    search.result.certificate = {};
  } else if (search.out_of_budget) {
    search.result.verdict = Representability::Unknown;
    search.result.steps = std::min(search.result.steps, budget);
    search.result.certificate.reason = NoCertificate::Reason::Budget;
  } else {
    search.result.verdict = Representability::No;
  }
  return search.result;
}

KnowledgeBase table_kb_from_model(const WorldSpace& space, const std::vector<InfoSet>& stereotypes,
                                  const std::vector<std::size_t>& sigma) {
  const ConstraintGraph graph(space.size(), stereotypes, sigma, /*include_empty_set=*/true);
  const auto levels = graph.levels();
  std::vector<Stereotype> named;
  for (std::size_t i = 0; i < stereotypes.size(); ++i) named.push_back({"S" + std::to_string(i), stereotypes[i]});
  TableFamily table;
  table.values.reserve(levels.size());
  for (auto l : levels) table.values.emplace_back(l);
  return KnowledgeBase(space, std::move(named), std::move(table));
}

// }}}
// {{{ search

std::vector<std::vector<InfoSet>> candidate_stereotype_sets(std::size_t world_count, std::size_t max_stereotypes) {
  const std::size_t universe = (std::size_t{1} << world_count) - 1;  // nonempty subsets
  const std::size_t top = max_stereotypes == 0 ? universe : std::min(max_stereotypes, universe);
  std::vector<std::vector<InfoSet>> out;
  for (std::size_t size = 1; size <= top; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i + 1;
    while (true) {
      std::vector<InfoSet> set;
      for (auto p : pick) set.emplace_back(p);
      out.push_back(std::move(set));
      // Next combination of {1..universe}, lexicographic.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == universe - (size - i)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

namespace {

struct Evaluation {
  std::uint64_t steps = 0;
  bool representable = false;
  bool undecided = false;
  std::vector<SetVerdict> verdicts;  // kept only for findings
};

Evaluation evaluate(const SelectionFunction& f, const std::vector<std::vector<InfoSet>>& sets, std::uint64_t budget) {
  Evaluation e;
  for (const auto& set : sets) {
    const auto r = is_representable(f, set, budget);
    e.steps += r.steps;
    if (r.verdict == Representability::Yes) {
      e.representable = true;
      e.verdicts.clear();
      return e;
    }
    if (r.verdict == Representability::Unknown) e.undecided = true;
    e.verdicts.push_back({set, r.verdict, r.certificate});
    if (e.steps > budget) {
      e.undecided = true;
      return e;
    }
  }
  if (e.undecided) e.verdicts.clear();
  return e;
}

}  // namespace

SearchResult search_nonrepresentable(const SearchOptions& options,
                                     const std::function<void(const SearchFinding&)>& on_found) {
  if (options.world_count < 1 || options.world_count > 4) {
    throw std::invalid_argument("search supports 1 to 4 worlds");
  }
  const std::size_t universe = (std::size_t{1} << options.world_count) - 1;
  if (options.max_stereotypes > universe) {
    throw std::invalid_argument("max_stereotypes exceeds the number of nonempty sets (" + std::to_string(universe) + ")");
  }
  if (options.budget == 0) throw std::invalid_argument("budget must be positive");

  SearchResult result;
  result.world_count = options.world_count;
  result.max_stereotypes = options.max_stereotypes == 0 ? universe : options.max_stereotypes;
  result.budget = options.budget;
  const auto sets = candidate_stereotype_sets(options.world_count, options.max_stereotypes);
  result.candidate_sets = sets.size();

  constexpr std::size_t kBatch = 2048;
  std::vector<SelectionFunction> batch;
  std::size_t next_index = 0;
  std::uint64_t spent = 0;
  bool exhausted = false;

  const auto flush = [&] {
    std::vector<Evaluation> evals(batch.size());
    std::vector<bool> ran(batch.size(), false);
    std::atomic<std::uint64_t> consumed{spent};
    detail::parallel_for(batch.size(), options.threads, [&](std::size_t i) {
      if (consumed.load(std::memory_order_relaxed) > options.budget) return;
      evals[i] = evaluate(batch[i], sets, options.budget);
      ran[i] = true;
      consumed.fetch_add(evals[i].steps, std::memory_order_relaxed);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!ran[i] || spent + evals[i].steps > options.budget) {
        exhausted = true;
        result.unknown_tail = true;
        result.tail_start = next_index + i;
        break;
      }
      spent += evals[i].steps;
      ++result.examined;
      if (evals[i].representable) {
        ++result.representable;
      } else if (evals[i].undecided) {
        ++result.undecided;
      } else {
        SearchFinding finding{next_index + i, std::move(batch[i]), std::move(evals[i].verdicts)};
        if (on_found) on_found(finding);
        result.found.push_back(std::move(finding));
      }
    }
    next_index += batch.size();
    batch.clear();
  };

  for_each_cumulative_selection(options.world_count, [&](const SelectionFunction& f) {
    batch.push_back(f);
    if (batch.size() == kBatch) flush();
    return !exhausted;
  });
  if (!exhausted && !batch.empty()) flush();
  result.steps = spent;
  return result;
}

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> abstract_names(InfoSet set) {
  std::vector<std::string> out;
  for (auto w : set.members()) out.push_back("w" + std::to_string(w));
  return out;
}

std::string key_of(InfoSet set) {
  std::string out;
  for (const auto& n : abstract_names(set)) out += (out.empty() ? "" : ",") + n;
  return out;
}

ojson sets_json(const std::vector<InfoSet>& sets) {
  ojson arr = ojson::array();
  for (auto s : sets) arr.push_back(abstract_names(s));
  return arr;
}

ojson certificate_json(const NoCertificate& c, const std::vector<InfoSet>& stereotypes) {
  ojson j;
  switch (c.reason) {
    case NoCertificate::Reason::None: j["reason"] = "none"; break;
    case NoCertificate::Reason::EmptyChoice:
      j["reason"] = "empty-choice";
      j["set"] = abstract_names(c.set);
      break;
    case NoCertificate::Reason::Cycle:
      j["reason"] = "strict-edge-in-cycle";
      j["set"] = abstract_names(c.set);
      j["low"] = {{"set", abstract_names(c.low.first)}, {"stereotype", abstract_names(stereotypes[c.low.second])}};
      j["high"] = {{"set", abstract_names(c.high.first)}, {"stereotype", abstract_names(stereotypes[c.high.second])}};
      j["refuted"] = c.refuted;
      break;
    case NoCertificate::Reason::Budget: j["reason"] = "budget"; break;
  }
  return j;
}

ojson finding_json(const SearchFinding& finding) {
  ojson j;
  j["index"] = finding.index;
  ojson selection = ojson::object();
  for (std::size_t bits = 1; bits < finding.selection.set_count(); ++bits) {
    selection[key_of(InfoSet(bits))] = abstract_names(finding.selection.choice[bits]);
  }
  j["selection"] = std::move(selection);
  j["verdicts"] = ojson::array();
  for (const auto& v : finding.verdicts) {
    j["verdicts"].push_back({{"stereotypes", sets_json(v.stereotypes)},
                             {"verdict", to_string(v.verdict)},
                             {"certificate", certificate_json(v.certificate, v.stereotypes)}});
  }
  return j;
}

}  // namespace

std::string evidence_json(const SearchFinding& finding, std::size_t) { return finding_json(finding).dump(); }

std::string to_json(const SearchResult& result) {
  ojson j;
  j["world_count"] = result.world_count;
  j["max_stereotypes"] = result.max_stereotypes;
  j["budget"] = result.budget;
  j["candidate_sets"] = result.candidate_sets;
  j["found"] = ojson::array();
  for (const auto& f : result.found) j["found"].push_back(finding_json(f));
  ojson summary;
  summary["examined"] = result.examined;
  summary["representable"] = result.representable;
  summary["undecided"] = result.undecided;
  summary["found"] = result.found.size();
  summary["unknown_tail"] = result.unknown_tail;
  summary["tail_start"] = result.unknown_tail ? ojson(result.tail_start) : ojson(nullptr);
  summary["steps"] = result.steps;
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

// }}}

}  // namespace stereo
