#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stereo/stereo.hpp"

#ifndef STEREO_CORPUS_DIR
#define STEREO_CORPUS_DIR "corpus"
#endif

namespace stereo::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Common {
  std::string kb;
  std::string format = "text";
  std::uint64_t budget = 0;
  bool override_scale_limit = false;
  unsigned threads = 0;
};

std::filesystem::path resolve_kb_path(const std::string& location) {
  constexpr std::string_view kBuiltin = "builtin:";
  if (location.rfind(kBuiltin, 0) != 0) return location;
  const char* env = std::getenv("STEREO_CORPUS");
  const std::filesystem::path dir = env != nullptr && *env != '\0' ? env : STEREO_CORPUS_DIR;
  const auto name = location.substr(kBuiltin.size());
  auto path = dir / (name + ".json");
  if (!std::filesystem::exists(path)) throw Error("no built-in KB named '" + name + "' in " + dir.string());
  return path;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("STEREO_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw Error(std::string("STEREO_BUDGET must be a positive integer, got '") + env + "'");
    return v;
  }
  return 100'000'000;
}

CheckOptions check_options(const Common& c) {
  CheckOptions o;
  o.budget = c.budget != 0 ? c.budget : default_budget();
  o.override_scale_limit = c.override_scale_limit;
  o.threads = c.threads;
  return o;
}

int verdict_exit(const std::vector<CheckReport>& reports) {
  bool na = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fail) return kExitFail;
    na = na || r.verdict == Verdict::NotApplicable;
  }
  return na ? kExitNotApplicable : kExitPass;
}

std::optional<std::vector<CheckReport>> run_property(const KnowledgeBase& kb, const std::string& property,
                                                      const CheckOptions& o) {
  if (property == "all") return check_all(kb, o);
  if (property == "zero") return std::vector{check_assumption_zero(kb, o)};
  if (property == "eq2") return std::vector{check_eq2(kb, o)};
  if (property == "four") return std::vector{check_assumption_four(kb, o)};
  if (property == "tree") return std::vector{check_tree_structure(kb, o)};
  if (property.rfind("klm:", 0) == 0) {
    if (const auto p = parse_klm_property(property.substr(4))) return std::vector{check_klm(kb, *p, o)};
  }
  return std::nullopt;
}

int emit_reports(const std::vector<CheckReport>& reports, const KnowledgeBase& kb, const Common& c,
                 std::ostream& out) {
  if (c.format == "json") {
    out << (reports.size() == 1 ? to_json(reports.front(), kb) : to_json(reports, kb));
  } else {
    for (const auto& r : reports) out << to_text(r, kb);
  }
  return verdict_exit(reports);
}

ojson set_json(const KnowledgeBase& kb, InfoSet s) { return kb.space().names(s); }

int cmd_infer(const Common& c, const std::string& given, const std::optional<std::string>& query, std::ostream& out,
              std::ostream& err) {
  const auto kb = load_kb_file(resolve_kb_path(c.kb));
  const auto alpha = parse_formula(given, kb.space());
  std::optional<Formula> beta;
  if (query) beta = parse_formula(*query, kb.space());
  const InfoSet f = models(alpha, kb.space());
  InferenceResult r;
  try {
    r = nm_consequences(kb, f);
  } catch (const NoUniqueMinimum& e) {
    err << "stereo: " << e.what() << "\n";
    return kExitNonUnique;
  }
  const bool entailed = beta && r.consequences.subset_of(models(*beta, kb.space()));
  if (c.format == "json") {
    ojson j;
    j["given"] = {{"formula", to_string(alpha, kb.space())}, {"worlds", set_json(kb, f)}};
    j["distances"] = ojson::array();
    for (std::size_t i = 0; i < kb.stereotype_count(); ++i) {
      j["distances"].push_back({{"stereotype", kb.stereotype(i).name}, {"value", r.distances[i].to_string()}});
    }
    j["chosen"] = r.chosen ? ojson(kb.stereotype(*r.chosen).name) : ojson(nullptr);
    j["consequences"] = set_json(kb, r.consequences);
    j["consistent"] = r.consistent;
    if (beta) j["query"] = {{"formula", to_string(*beta, kb.space())}, {"entailed", entailed}};
    out << j.dump(2) << "\n";
    return kExitPass;
  }
  out << "F = " << kb.space().format(f) << "\n";
  for (std::size_t i = 0; i < kb.stereotype_count(); ++i) {
    out << "  d(F, " << kb.stereotype(i).name << ") = " << r.distances[i].to_string() << "\n";
  }
  out << "chosen: " << (r.chosen ? kb.stereotype(*r.chosen).name : std::string("none (empty F)")) << "\n";
  out << "F' = " << kb.space().format(r.consequences) << "\n";
  out << "consistent: " << (r.consistent ? "yes" : "no") << "\n";
  if (beta) out << "query " << to_string(*beta, kb.space()) << ": " << (entailed ? "entailed" : "not entailed") << "\n";
  return kExitPass;
}

int cmd_check(const Common& c, const std::string& property, std::ostream& out, std::ostream& err) {
  const auto kb = load_kb_file(resolve_kb_path(c.kb));
  const auto reports = run_property(kb, property, check_options(c));
  if (!reports) {
    err << "stereo: unknown property '" << property << "'\n";
    return kExitError;
  }
  return emit_reports(*reports, kb, c, out);
}

int cmd_verify(const Common& c, int theorem, std::ostream& out) {
  const auto kb = load_kb_file(resolve_kb_path(c.kb));
  const auto o = check_options(c);
  return emit_reports({theorem == 1 ? verify_theorem1(kb, o) : verify_theorem2(kb, o)}, kb, c, out);
}

std::string selection_text(const SelectionFunction& f) {
  std::string out;
  for (std::size_t bits = 1; bits < f.set_count(); ++bits) {
    if (!out.empty()) out += "; ";
    const auto names = [](InfoSet s) {
      std::string t;
      for (auto w : s.members()) t += (t.empty() ? "" : ",") + ("w" + std::to_string(w));
      return t;
    };
    out += names(InfoSet(bits)) + "->" + names(f.choice[bits]);
  }
  return out;
}

int cmd_search(const Common& c, std::size_t worlds, std::size_t max_stereotypes, std::ostream& out) {
  SearchOptions o;
  o.world_count = worlds;
  o.max_stereotypes = max_stereotypes;
  o.budget = c.budget != 0 ? c.budget : default_budget();
  o.threads = c.threads;
  const bool text = c.format != "json";
  const auto result = search_nonrepresentable(o, [&](const SearchFinding& finding) {
    if (text) out << "found #" << finding.index << ": " << selection_text(finding.selection) << "\n" << std::flush;
  });
  if (!text) {
    out << to_json(result);
    return kExitPass;
  }
  out << result.found.size() << " found; " << result.examined << " cumulative selections examined ("
      << result.representable << " representable, " << result.undecided << " undecided) over "
      << result.candidate_sets << " candidate stereotype sets; " << result.steps << " steps\n";
  if (result.unknown_tail) out << "UNKNOWN tail from selection #" << result.tail_start << " (budget exhausted)\n";
  return kExitPass;
}

int cmd_explain(const Common& c, const std::string& given, std::ostream& out) {
  const auto kb = load_kb_file(resolve_kb_path(c.kb));
  const auto alpha = parse_formula(given, kb.space());
  const InfoSet f = models(alpha, kb.space());
  std::vector<DistanceValue> d;
  for (std::size_t i = 0; i < kb.stereotype_count(); ++i) d.push_back(distance(kb, f, i));
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });
  const auto minimal = minimal_stereotypes(d);
  const bool unique = minimal.size() == 1;
  const auto is_min = [&](std::size_t i) { return std::find(minimal.begin(), minimal.end(), i) != minimal.end(); };

  if (c.format == "json") {
    ojson j;
    j["given"] = {{"formula", to_string(alpha, kb.space())}, {"worlds", set_json(kb, f)}};
    j["rows"] = ojson::array();
    for (auto i : order) {
      j["rows"].push_back({{"stereotype", kb.stereotype(i).name}, {"value", d[i].to_string()}, {"minimal", is_min(i)}});
    }
    j["empty"] = f.empty();
    j["unique"] = unique;
    j["minimum"] = ojson::array();
    for (auto i : minimal) j["minimum"].push_back(kb.stereotype(i).name);
    out << j.dump(2) << "\n";
  } else {
    out << "F = " << kb.space().format(f) << "\n";
    std::size_t width = 0;
    for (const auto& s : kb.stereotypes()) width = std::max(width, s.name.size());
    for (auto i : order) {
      const auto& name = kb.stereotype(i).name;
      out << (is_min(i) ? "* " : "  ") << name << std::string(width - name.size() + 2, ' ') << d[i].to_string() << "\n";
    }
    if (f.empty()) {
      out << "empty information set: no stereotype is selected\n";
    } else if (unique) {
      out << "unique minimum: " << kb.stereotype(minimal.front()).name << "\n";
    } else {
      out << "NON-UNIQUE minimum:";
      for (std::size_t k = 0; k < minimal.size(); ++k) out << (k ? ", " : " ") << kb.stereotype(minimal[k]).name;
      out << "\n";
    }
  }
  return f.empty() || unique ? kExitPass : kExitNonUnique;
}

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_kb(CLI::App* app, Common& c) {
  app->add_option("--kb", c.kb, "KB file, or builtin:<name>")->required();
}

void add_sweep(CLI::App* app, Common& c) {
  app->add_option("--budget", c.budget, "Maximum cases per sweep (default 10^8, or STEREO_BUDGET)")
      ->check(CLI::PositiveNumber);
  app->add_flag("--override-scale-limit", c.override_scale_limit, "Allow sweeps beyond 6 worlds or 8 stereotypes");
  app->add_option("--threads", c.threads, "Worker threads (0: all cores)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stereotype-based nonmonotonic reasoning: inference, law checks and searches"};
  app.require_subcommand(1);
  Common c;
  std::string given;
  std::optional<std::string> query;
  std::string property;
  int theorem = 1;
  std::size_t worlds = 2;
  std::size_t max_stereotypes = 0;

  auto* infer = app.add_subcommand("infer", "Nonmonotonic consequences of a formula");
  add_kb(infer, c);
  infer->add_option("--given", given, "Formula describing the facts")->required();
  infer->add_option("--query", query, "Formula to test for entailment");
  add_format(infer, c);

  auto* check = app.add_subcommand("check", "Run a law checker");
  add_kb(check, c);
  check->add_option("--property", property, "zero | eq2 | four | tree | klm:<name> | all")->required();
  add_format(check, c);
  add_sweep(check, c);

  auto* verify = app.add_subcommand("verify", "Check a theorem's conclusion exhaustively");
  add_kb(verify, c);
  verify->add_option("--theorem", theorem, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  add_format(verify, c);
  add_sweep(verify, c);

  auto* search = app.add_subcommand("search", "Search for cumulative selections no stereotype set represents");
  search->add_option("--n-worlds", worlds, "Number of worlds (1 to 4)")->required();
  search->add_option("--max-stereotypes", max_stereotypes, "Largest candidate stereotype set (0: no bound)");
  search->add_option("--budget", c.budget, "Representability steps (default 10^8, or STEREO_BUDGET)")
      ->check(CLI::PositiveNumber);
  search->add_option("--threads", c.threads, "Worker threads (0: all cores)");
  add_format(search, c);

  auto* explain = app.add_subcommand("explain", "Distance table for a formula");
  add_kb(explain, c);
  explain->add_option("--given", given, "Formula describing the facts")->required();
  add_format(explain, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*infer) return cmd_infer(c, given, query, out, err);
    if (*check) return cmd_check(c, property, out, err);
    if (*verify) return cmd_verify(c, theorem, out);
    if (*search) return cmd_search(c, worlds, max_stereotypes, out);
    if (*explain) return cmd_explain(c, given, out);
  } catch (const NoUniqueMinimum& e) {
    err << "stereo: " << e.what() << "\n";
    return kExitNonUnique;
  } catch (const std::exception& e) {
    err << "stereo: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace stereo::cli
