#include "stereo/checkers.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stereo/error.hpp"
#include "stereo/inference.hpp"
#include "stereo/logic.hpp"
#include "sweep.hpp"

namespace stereo {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

const char* to_string(KlmProperty property) {
  switch (property) {
    case KlmProperty::Reflexivity: return "reflexivity";
    case KlmProperty::Lle: return "lle";
    case KlmProperty::RwAnd: return "rw-and";
    case KlmProperty::Cut: return "cut";
    case KlmProperty::CautiousMonotony: return "cautious-monotony";
    case KlmProperty::Cumulativity: return "cumulativity";
    case KlmProperty::Or: return "or";
  }
  return "?";
}

std::optional<KlmProperty> parse_klm_property(std::string_view name) {
  for (auto p : kAllKlmProperties) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

// {{{ witnesses

namespace {

template <typename T>
const T& field(const Witness& w, std::string_view label) {
  for (const auto& f : w.fields) {
    if (f.label == label) {
      if (const auto* v = std::get_if<T>(&f.value)) return *v;
      throw std::out_of_range("witness field '" + std::string(label) + "' has another kind");
    }
  }
  throw std::out_of_range("witness has no field '" + std::string(label) + "'");
}

}  // namespace

InfoSet Witness::set(std::string_view label) const { return field<InfoSet>(*this, label); }
std::size_t Witness::stereotype(std::string_view label) const { return field<StereotypeRef>(*this, label).index; }
std::vector<std::size_t> Witness::stereotypes(std::string_view label) const {
  return field<StereotypeGroup>(*this, label).indices;
}
DistanceValue Witness::value(std::string_view label) const { return field<DistanceValue>(*this, label); }

// }}}
// {{{ sweep machinery

namespace {

using Clock = std::chrono::steady_clock;
using u128 = unsigned __int128;

struct Collector {
  std::size_t cap;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<Witness> witnesses;

  void fail(Witness w) {
    ++failures;
    if (witnesses.size() < cap) witnesses.push_back(std::move(w));
  }
};

/// Runs `body(outer, collector)` for every outer index and merges per-index collectors in
/// index order, so reports do not depend on the thread count. Indices run in fixed-size
/// waves; each wave keeps only as many witnesses as the report still has room for.
CheckReport sweep(std::string property, std::string universe, std::size_t outer, const CheckOptions& options,
                  const std::function<void(std::size_t, Collector&)>& body) {
  constexpr std::size_t kWave = 1024;
  const auto start = Clock::now();
  CheckReport report;
  report.property = std::move(property);
  report.universe = std::move(universe);
  const std::size_t cap = std::max<std::size_t>(options.max_witnesses, 1);
  for (std::size_t first = 0; first < outer; first += kWave) {
    const std::size_t count = std::min(kWave, outer - first);
    const std::size_t room = cap - report.witnesses.size();
    std::vector<Collector> parts(count, Collector{room});
    detail::parallel_for(count, options.threads, [&](std::size_t i) { body(first + i, parts[i]); });
    for (auto& p : parts) {
      report.stats.cases += p.cases;
      report.stats.failures += p.failures;
      for (auto& w : p.witnesses) {
        if (report.witnesses.size() >= cap) break;
        report.witnesses.push_back(std::move(w));
      }
    }
  }
  report.verdict = report.stats.failures == 0 ? Verdict::Pass : Verdict::Fail;
  report.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

CheckReport not_applicable(std::string property, std::string reason) {
  CheckReport r;
  r.property = std::move(property);
  r.universe = std::move(reason);
  r.verdict = Verdict::NotApplicable;
  return r;
}

u128 pow_u128(u128 base, std::size_t exp) {
  u128 r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

void guard_scale(const KnowledgeBase& kb, const CheckOptions& options, u128 cases, const std::string& property) {
  const std::size_t n = kb.space().size();
  const std::size_t k = kb.stereotype_count();
  if (n > 20) throw ScaleLimit(property + ": " + std::to_string(n) + " worlds cannot be swept exhaustively");
  if (!options.override_scale_limit && (n > kDefaultMaxSweepWorlds || k > kDefaultMaxSweepStereotypes)) {
    throw ScaleLimit(property + ": " + std::to_string(n) + " worlds and " + std::to_string(k) +
                     " stereotypes exceed the default sweep limits (" + std::to_string(kDefaultMaxSweepWorlds) + " worlds, " + std::to_string(kDefaultMaxSweepStereotypes) + " stereotypes); "
                     "override the scale limit to proceed");
  }
  if (cases > options.budget) {
    const auto shown = cases > u128(~0ULL) ? ~0ULL : static_cast<unsigned long long>(cases);
    throw ScaleLimit(property + ": sweep needs " + std::to_string(shown) + " cases, budget is " +
                     std::to_string(options.budget));
  }
}

std::string describe(const KnowledgeBase& kb, const std::string& what) {
  return what + " over |W|=" + std::to_string(kb.space().size()) + ", " + std::to_string(kb.stereotype_count()) +
         " stereotype" + (kb.stereotype_count() == 1 ? "" : "s");
}

/// Iterates every G with `low` ⊆ G ⊆ `high` (requires low ⊆ high), lowest first.
template <typename Fn>
void for_each_between(InfoSet low, InfoSet high, Fn&& fn) {
  const std::uint64_t free = (high - low).bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(InfoSet(low.bits() | sub));
    if (sub == free) break;
    sub = (sub - free) & free;
  }
}

}  // namespace

// }}}
// {{{ assumptions

CheckReport check_assumption_zero(const KnowledgeBase& kb, const CheckOptions& options) {
  const ChoiceTable table(kb);
  const std::size_t sets = table.set_count();
  return sweep("assumption-zero", describe(kb, "every nonempty F"), sets, options,
               [&](std::size_t bits, Collector& c) {
                 if (bits == 0) return;
                 ++c.cases;
                 const InfoSet f(bits);
                 if (table.tied(f)) {
                   c.fail({{{"F", f}, {"co_minimal", StereotypeGroup{table.co_minimal(f)}}}});
                 }
               });
}

CheckReport check_eq2(const KnowledgeBase& kb, const CheckOptions& options) {
  const std::size_t n = kb.space().size();
  const std::size_t k = kb.stereotype_count();
  guard_scale(kb, options, pow_u128(4, n) * k * k, "eq2");
  const ChoiceTable table(kb);
  const std::size_t sets = table.set_count();
  // Per (F', S'): F'∩S' and S'-F'.
  std::vector<InfoSet> common(sets * k), excluded(sets * k);
  for (std::size_t f = 0; f < sets; ++f) {
    for (std::size_t s = 0; s < k; ++s) {
      common[f * k + s] = InfoSet(f) & table.extent(s);
      excluded[f * k + s] = table.extent(s) - InfoSet(f);
    }
  }
  return sweep("eq2", describe(kb, "all (F, S, F', S') with F, F' ⊆ W"), sets * k, options,
               [&](std::size_t idx, Collector& c) {
                 const std::size_t f = idx / k;
                 const std::size_t s = idx % k;
                 const InfoSet a = common[idx];
                 const InfoSet b = excluded[idx];
                 const DistanceValue& d = table.distance(InfoSet(f), s);
                 for (std::size_t j = 0; j < sets * k; ++j) {
                   ++c.cases;
                   if (!common[j].subset_of(a) || !b.subset_of(excluded[j])) continue;
                   const DistanceValue& d2 = table.distance(InfoSet(j / k), j % k);
                   if (d > d2) {
                     c.fail({{{"F", InfoSet(f)},
                              {"S", StereotypeRef{s}},
                              {"F'", InfoSet(j / k)},
                              {"S'", StereotypeRef{j % k}},
                              {"d(F,S)", d},
                              {"d(F',S')", d2}}});
                   }
                 }
               });
}

CheckReport check_assumption_four(const KnowledgeBase& kb, const CheckOptions& options) {
  const std::size_t n = kb.space().size();
  const std::size_t k = kb.stereotype_count();
  guard_scale(kb, options, pow_u128(4, n) * k, "assumption-four");
  const ChoiceTable table(kb);
  const std::size_t sets = table.set_count();
  return sweep("assumption-four", describe(kb, "all F ⊆ F' (by index) ⊆ W and stereotypes S"), sets, options,
               [&](std::size_t f, Collector& c) {
                 for (std::size_t g = f; g < sets; ++g) {
                   for (std::size_t s = 0; s < k; ++s) {
                     ++c.cases;
                     const DistanceValue& lhs = table.distance(InfoSet(f | g), s);
                     const DistanceValue& rhs = std::min(table.distance(InfoSet(f), s), table.distance(InfoSet(g), s));
                     if (lhs != rhs) {
                       c.fail({{{"F", InfoSet(f)},
                                {"F'", InfoSet(g)},
                                {"S", StereotypeRef{s}},
                                {"d(F∪F',S)", lhs},
                                {"min", rhs}}});
                     }
                   }
                 }
               });
}

CheckReport check_tree_structure(const KnowledgeBase& kb, const CheckOptions& options) {
  const std::size_t k = kb.stereotype_count();
  return sweep("tree-structure", describe(kb, "all stereotype pairs"), k, options, [&](std::size_t i, Collector& c) {
    const InfoSet s = kb.stereotype(i).extent;
    for (std::size_t j = i + 1; j < k; ++j) {
      ++c.cases;
      const InfoSet t = kb.stereotype(j).extent;
      if (s.intersects(t) && !s.subset_of(t) && !t.subset_of(s)) {
        c.fail({{{"S", StereotypeRef{i}}, {"T", StereotypeRef{j}}}});
      }
    }
  });
}

// }}}
// {{{ KLM properties

CheckReport check_klm(const KnowledgeBase& kb, KlmProperty property, const CheckOptions& options) {
  const std::string name = std::string("klm:") + to_string(property);
  const std::size_t n = kb.space().size();
  u128 cases = pow_u128(4, n);
  if (property == KlmProperty::RwAnd) cases = pow_u128(2, n) * (pow_u128(3, n) + pow_u128(4, n));
  guard_scale(kb, options, cases, name);
  const ChoiceTable table(kb);
  if (!table.unique_everywhere()) return not_applicable(name, "assumption zero fails for this knowledge base");
  const std::size_t sets = table.set_count();
  const InfoSet all = kb.space().all();

  switch (property) {
    case KlmProperty::Reflexivity:
      return sweep(name, describe(kb, "every F ⊆ W: F' ⊆ F"), sets, options, [&](std::size_t f, Collector& c) {
        ++c.cases;
        const InfoSet fs(f);
        if (!table.consequences(fs).subset_of(fs)) c.fail({{{"F", fs}, {"F'", table.consequences(fs)}}});
      });

    case KlmProperty::Lle:
      return sweep(name, describe(kb, "every F ⊆ W via two equivalent formulas for F"), sets, options,
                   [&](std::size_t f, Collector& c) {
                     ++c.cases;
                     const InfoSet fs(f);
                     const Formula direct = canonical_formula(fs, kb.space());
                     const Formula dual = Formula::negation(canonical_formula(all - fs, kb.space()));
                     const auto r1 = nm_consequences(kb, models(direct, kb.space()));
                     const auto r2 = nm_consequences(kb, models(dual, kb.space()));
                     if (r1.chosen != r2.chosen || r1.consequences != r2.consequences) {
                       c.fail({{{"F", fs}, {"F'(direct)", r1.consequences}, {"F'(dual)", r2.consequences}}});
                     }
                   });

    case KlmProperty::RwAnd:
      return sweep(name, describe(kb, "every F and β-, γ-sets: weakening and conjunction of entailed sets"), sets,
                   options, [&](std::size_t f, Collector& c) {
                     const InfoSet cons = table.consequences(InfoSet(f));
                     const auto entails = [&](InfoSet b) { return cons.subset_of(b); };
                     for (std::size_t b = 0; b < sets; ++b) {
                       const InfoSet bs(b);
                       const bool eb = entails(bs);
                       for_each_between(bs, all, [&](InfoSet cs) {
                         ++c.cases;
                         if (eb && !entails(cs)) {
                           c.fail({{{"F", InfoSet(f)}, {"beta", bs}, {"gamma", cs}}});
                         }
                       });
                       for (std::size_t g = 0; g < sets; ++g) {
                         ++c.cases;
                         const InfoSet gs(g);
                         if (eb && entails(gs) && !entails(bs & gs)) {
                           c.fail({{{"F", InfoSet(f)}, {"beta", bs}, {"gamma", gs}}});
                         }
                       }
                     }
                   });

    case KlmProperty::Cut:
    case KlmProperty::CautiousMonotony:
    case KlmProperty::Cumulativity:
      return sweep(name, describe(kb, "every F and G with F' ⊆ G ⊆ F"), sets, options,
                   [&, property](std::size_t f, Collector& c) {
                     const InfoSet fs(f);
                     const InfoSet fc = table.consequences(fs);
                     for_each_between(fc, fs, [&](InfoSet gs) {
                       ++c.cases;
                       const InfoSet gc = table.consequences(gs);
                       const bool cut = fc.subset_of(gc);
                       const bool cm = gc.subset_of(fc);
                       const bool ok = property == KlmProperty::Cut              ? cut
                                       : property == KlmProperty::CautiousMonotony ? cm
                                                                                   : cut && cm;
                       if (!ok) c.fail({{{"F", fs}, {"G", gs}, {"F'", fc}, {"G'", gc}}});
                     });
                   });

    case KlmProperty::Or:
      return sweep(name, describe(kb, "every F < G: (F∪G)' ⊆ F' ∪ G'"), sets, options,
                   [&](std::size_t f, Collector& c) {
                     const InfoSet fs(f);
                     for (std::size_t g = f + 1; g < sets; ++g) {
                       ++c.cases;
                       const InfoSet gs(g);
                       const InfoSet joint = table.consequences(fs | gs);
                       const InfoSet parts = table.consequences(fs) | table.consequences(gs);
                       if (!joint.subset_of(parts)) {
                         c.fail({{{"F", fs},
                                  {"G", gs},
                                  {"F'", table.consequences(fs)},
                                  {"G'", table.consequences(gs)},
                                  {"(F∪G)'", joint}}});
                       }
                     }
                   });
  }
  throw std::logic_error("unhandled KLM property");
}

// }}}
// {{{ theorems

CheckReport verify_theorem1(const KnowledgeBase& kb, const CheckOptions& options) {
  guard_scale(kb, options, pow_u128(3, kb.space().size()), "theorem1");
  const ChoiceTable table(kb);
  if (!table.unique_everywhere()) return not_applicable("theorem1", "assumption zero fails for this knowledge base");
  return sweep("theorem1", describe(kb, "every nonempty F and nonempty F' with F ∩ S^F ⊆ F' ⊆ F"), table.set_count(),
               options, [&](std::size_t f, Collector& c) {
                 if (f == 0) return;
                 const InfoSet fs(f);
                 const std::size_t chosen = *table.chosen(fs);
                 for_each_between(table.consequences(fs), fs, [&](InfoSet gs) {
                   if (gs.empty()) return;
                   ++c.cases;
                   const std::size_t other = *table.chosen(gs);
                   if (other != chosen) {
                     c.fail({{{"F", fs}, {"F'", gs}, {"S^F", StereotypeRef{chosen}}, {"S^F'", StereotypeRef{other}}}});
                   }
                 });
               });
}

CheckReport verify_theorem2(const KnowledgeBase& kb, const CheckOptions& options) {
  guard_scale(kb, options, pow_u128(4, kb.space().size()), "theorem2");
  for (const auto& pre : {check_assumption_zero(kb, options), check_eq2(kb, options),
                          check_assumption_four(kb, options)}) {
    if (pre.verdict != Verdict::Pass) return not_applicable("theorem2", "prerequisite " + pre.property + " does not pass");
  }
  const ChoiceTable table(kb);
  const std::size_t sets = table.set_count();
  return sweep("theorem2", describe(kb, "every nonempty F < F' with S^F = S^F'"), sets, options,
               [&](std::size_t f, Collector& c) {
                 if (f == 0) return;
                 const InfoSet fs(f);
                 const std::size_t chosen = *table.chosen(fs);
                 for (std::size_t g = f + 1; g < sets; ++g) {
                   const InfoSet gs(g);
                   if (*table.chosen(gs) != chosen) continue;
                   ++c.cases;
                   const std::size_t joint = *table.chosen(fs | gs);
                   if (joint != chosen) {
                     c.fail({{{"F", fs}, {"F'", gs}, {"S^F", StereotypeRef{chosen}}, {"S^(F∪F')", StereotypeRef{joint}}}});
                   }
                 }
               });
}

std::vector<CheckReport> check_all(const KnowledgeBase& kb, const CheckOptions& options) {
  std::vector<CheckReport> out;
  out.push_back(check_assumption_zero(kb, options));
  out.push_back(check_eq2(kb, options));
  out.push_back(check_assumption_four(kb, options));
  out.push_back(check_tree_structure(kb, options));
  for (auto p : kAllKlmProperties) out.push_back(check_klm(kb, p, options));
  return out;
}

// }}}
// {{{ rendering

namespace {

std::string render_text(const WitnessValue& v, const KnowledgeBase& kb) {
  struct Visitor {
    const KnowledgeBase& kb;
    std::string operator()(InfoSet s) const { return kb.space().format(s); }
    std::string operator()(StereotypeRef r) const { return kb.stereotype(r.index).name; }
    std::string operator()(const StereotypeGroup& g) const {
      std::string out = "[";
      for (std::size_t i = 0; i < g.indices.size(); ++i) out += (i ? ", " : "") + kb.stereotype(g.indices[i]).name;
      return out + "]";
    }
    std::string operator()(const DistanceValue& d) const { return d.to_string(); }
  };
  return std::visit(Visitor{kb}, v);
}

nlohmann::ordered_json render_json(const WitnessValue& v, const KnowledgeBase& kb) {
  struct Visitor {
    const KnowledgeBase& kb;
    nlohmann::ordered_json operator()(InfoSet s) const { return kb.space().names(s); }
    nlohmann::ordered_json operator()(StereotypeRef r) const { return kb.stereotype(r.index).name; }
    nlohmann::ordered_json operator()(const StereotypeGroup& g) const {
      auto out = nlohmann::ordered_json::array();
      for (auto i : g.indices) out.push_back(kb.stereotype(i).name);
      return out;
    }
    nlohmann::ordered_json operator()(const DistanceValue& d) const { return d.to_string(); }
  };
  return std::visit(Visitor{kb}, v);
}

nlohmann::ordered_json report_json(const CheckReport& r, const KnowledgeBase& kb, bool include_timing) {
  nlohmann::ordered_json j;
  j["property"] = r.property;
  j["universe"] = r.universe;
  j["verdict"] = to_string(r.verdict);
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const auto& w : r.witnesses) {
    nlohmann::ordered_json wj = nlohmann::ordered_json::object();
    for (const auto& f : w.fields) wj[f.label] = render_json(f.value, kb);
    j["witnesses"].push_back(std::move(wj));
  }
  j["stats"]["cases"] = r.stats.cases;
  j["stats"]["failures"] = r.stats.failures;
  j["stats"]["elapsed_ms"] = include_timing ? r.stats.elapsed_ms : 0.0;
  return j;
}

}  // namespace

std::string to_text(const CheckReport& r, const KnowledgeBase& kb, std::size_t shown_witnesses) {
  std::string out = "[" + std::string(to_string(r.verdict)) + "] " + r.property + " (" +
                    std::to_string(r.stats.cases) + " cases";
  if (r.stats.failures != 0) out += ", " + std::to_string(r.stats.failures) + " failing";
  out += ")\n  universe: " + r.universe + "\n";
  const std::size_t shown = std::min(shown_witnesses, r.witnesses.size());
  for (std::size_t i = 0; i < shown; ++i) {
    out += "  witness:";
    for (const auto& f : r.witnesses[i].fields) out += " " + f.label + "=" + render_text(f.value, kb);
    out += "\n";
  }
  if (r.stats.failures > shown) out += "  ... " + std::to_string(r.stats.failures - shown) + " more\n";
  return out;
}

std::string to_json(const CheckReport& report, const KnowledgeBase& kb, bool include_timing) {
  return report_json(report, kb, include_timing).dump(2) + "\n";
}

std::string to_json(const std::vector<CheckReport>& reports, const KnowledgeBase& kb, bool include_timing) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r, kb, include_timing));
  return arr.dump(2) + "\n";
}

// }}}

}  // namespace stereo
