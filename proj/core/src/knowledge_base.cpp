#include "stereo/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stereo {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const char* family_name(const DistanceFamily& family) {
  struct Visitor {
    const char* operator()(const ConstantFamily&) const { return "constant"; }
    const char* operator()(const CardinalityFamily&) const { return "cardinality"; }
    const char* operator()(const MinWorldFamily&) const { return "min-world"; }
    const char* operator()(const PartitionCoverFamily&) const { return "partition-cover"; }
    const char* operator()(const TableFamily&) const { return "table"; }
  };
  return std::visit(Visitor{}, family);
}

// {{{ resolved model

std::vector<Violation> KnowledgeBase::check(const WorldSpace& space,
                                            const std::vector<Stereotype>& stereotypes,
                                            const DistanceFamily& distance) {
  std::vector<Violation> out;
  if (stereotypes.empty()) {
    out.push_back({ViolationKind::NoStereotypes, "/stereotypes", "at least one stereotype is required"});
  }
  std::set<std::string, std::less<>> names;
  const InfoSet all = space.all();
  for (std::size_t i = 0; i < stereotypes.size(); ++i) {
    const auto& s = stereotypes[i];
    const auto loc = "/stereotypes/" + std::to_string(i);
    if (!is_identifier(s.name)) {
      out.push_back({ViolationKind::InvalidName, loc, "invalid stereotype name '" + s.name + "'"});
    }
    if (!names.insert(s.name).second) {
      out.push_back({ViolationKind::DuplicateName, loc, "stereotype '" + s.name + "' declared twice"});
    }
    if (!s.extent.subset_of(all)) {
      out.push_back({ViolationKind::UnknownWorld, loc, "extent refers to worlds outside the space"});
    }
    if (s.extent.empty()) {
      out.push_back({ViolationKind::EmptyStereotype, loc, "stereotype '" + s.name + "' has no worlds"});
    }
  }

  const auto spec_error = [&](std::string location, std::string message) {
    out.push_back({ViolationKind::DistanceSpecError, "/distance" + location, std::move(message)});
  };
  if (const auto* mw = std::get_if<MinWorldFamily>(&distance)) {
    if (mw->rank.size() != space.size()) {
      spec_error("/rank", "rank must be given for every world");
    } else {
      std::set<std::uint64_t> seen;
      for (std::size_t w = 0; w < mw->rank.size(); ++w) {
        if (!seen.insert(mw->rank[w]).second) {
          spec_error("/rank/" + space.worlds()[w].name, "rank is not injective");
        }
      }
    }
    for (std::size_t i = 0; i < stereotypes.size(); ++i) {
      if (stereotypes[i].extent.size() != 1) {
        spec_error("", "min-world requires singleton stereotypes; '" + stereotypes[i].name + "' is not");
      }
    }
  } else if (const auto* pc = std::get_if<PartitionCoverFamily>(&distance)) {
    std::vector<std::size_t> sorted = pc->order;
    std::sort(sorted.begin(), sorted.end());
    bool permutation = sorted.size() == stereotypes.size();
    for (std::size_t i = 0; permutation && i < sorted.size(); ++i) permutation = sorted[i] == i;
    if (!permutation) spec_error("/order", "order must list every stereotype exactly once");
    InfoSet covered;
    bool disjoint = true;
    for (const auto& s : stereotypes) {
      disjoint = disjoint && !covered.intersects(s.extent);
      covered |= s.extent;
    }
    if (!disjoint || covered != all) {
      spec_error("", "partition-cover requires stereotype extents to partition the worlds");
    }
  } else if (const auto* table = std::get_if<TableFamily>(&distance)) {
    if (space.size() > kMaxTableWorlds) {
      spec_error("/entries", "table distances support at most " + std::to_string(kMaxTableWorlds) +
                                 " worlds");
    } else if (table->values.size() != (std::size_t{1} << space.size()) * stereotypes.size()) {
      spec_error("/entries", "table must cover every (information set, stereotype) pair");
    }
  }
  return out;
}

KnowledgeBase::KnowledgeBase(WorldSpace space, std::vector<Stereotype> stereotypes,
                             DistanceFamily distance)
    : space_(std::move(space)), stereotypes_(std::move(stereotypes)), distance_(std::move(distance)) {
  if (auto problems = check(space_, stereotypes_, distance_); !problems.empty()) {
    throw KbError(std::move(problems.front()));
  }
}

std::optional<std::size_t> KnowledgeBase::stereotype_index(std::string_view name) const {
  for (std::size_t i = 0; i < stereotypes_.size(); ++i) {
    if (stereotypes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<Violation> validate_kb(const KnowledgeBase& kb) {
  auto out = WorldSpace::check(kb.space().atoms(), kb.space().worlds());
  auto rest = KnowledgeBase::check(kb.space(), kb.stereotypes(), kb.distance());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// }}}
// {{{ JSON -> document

namespace {

[[noreturn]] void format_error(const std::string& location, const std::string& message) {
  throw KbError({ViolationKind::FormatError, location, message});
}

void require_fields(const json& obj, const std::string& loc, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) format_error(loc, "expected an object");
  for (const char* key : required) {
    if (!obj.contains(key)) format_error(loc, std::string("missing field '") + key + "'");
  }
  for (const auto& [key, value] : obj.items()) {
    const auto known = [&](std::initializer_list<const char*> keys) {
      return std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
    };
    if (!known(required) && !known(optional)) format_error(loc, "unknown field '" + key + "'");
  }
}

std::string as_string(const json& v, const std::string& loc) {
  if (!v.is_string()) format_error(loc, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> as_string_array(const json& v, const std::string& loc) {
  if (!v.is_array()) format_error(loc, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], loc + "/" + std::to_string(i)));
  return out;
}

DistanceValue as_distance(const json& v, const std::string& loc) {
  if (v.is_number_integer()) return DistanceValue(v.get<std::int64_t>());
  if (v.is_string()) {
    if (auto d = DistanceValue::parse(v.get<std::string>())) return *d;
  }
  format_error(loc, "expected an integer, \"p/q\" or \"inf\"");
}

DistanceDoc parse_distance(const json& d) {
  const std::string loc = "/distance";
  if (!d.is_object() || !d.contains("family")) format_error(loc, "missing field 'family'");
  DistanceDoc doc;
  doc.family = as_string(d["family"], loc + "/family");
  if (doc.family == "constant" || doc.family == "cardinality") {
    require_fields(d, loc, {"family"});
  } else if (doc.family == "min-world") {
    require_fields(d, loc, {"family", "rank"});
    const auto& rank = d["rank"];
    if (!rank.is_object()) format_error(loc + "/rank", "expected an object world -> rank");
    doc.rank.emplace();
    for (const auto& [name, value] : rank.items()) {
      if (!value.is_number_integer()) format_error(loc + "/rank/" + name, "expected an integer");
      doc.rank->emplace_back(name, value.get<std::int64_t>());
    }
  } else if (doc.family == "partition-cover") {
    require_fields(d, loc, {"family", "order"});
    doc.order = as_string_array(d["order"], loc + "/order");
  } else if (doc.family == "table") {
    require_fields(d, loc, {"family", "entries"});
    const auto& entries = d["entries"];
    if (!entries.is_array()) format_error(loc + "/entries", "expected an array");
    doc.entries.emplace();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto eloc = loc + "/entries/" + std::to_string(i);
      require_fields(entries[i], eloc, {"worlds", "stereotype", "value"});
      doc.entries->push_back({as_string_array(entries[i]["worlds"], eloc + "/worlds"),
                              as_string(entries[i]["stereotype"], eloc + "/stereotype"),
                              as_distance(entries[i]["value"], eloc + "/value")});
    }
  } else {
    format_error(loc + "/family", "unknown distance family '" + doc.family + "'");
  }
  return doc;
}

}  // namespace

KbDocument parse_kb_document(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end(), nullptr, true, /*ignore_comments=*/false);
  } catch (const json::parse_error& e) {
    format_error("", std::string("malformed JSON: ") + e.what());
  }
  require_fields(root, "", {"atoms", "worlds", "stereotypes", "distance"});
  KbDocument doc;
  doc.atoms = as_string_array(root["atoms"], "/atoms");

  const auto& worlds = root["worlds"];
  if (!worlds.is_array()) format_error("/worlds", "expected an array");
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const auto loc = "/worlds/" + std::to_string(i);
    require_fields(worlds[i], loc, {"name", "valuation"});
    WorldDoc w;
    w.name = as_string(worlds[i]["name"], loc + "/name");
    const auto& val = worlds[i]["valuation"];
    if (!val.is_object()) format_error(loc + "/valuation", "expected an object atom -> bool");
    for (const auto& [atom, truth] : val.items()) {
      if (!truth.is_boolean()) format_error(loc + "/valuation/" + atom, "expected a boolean");
      w.valuation.emplace_back(atom, truth.get<bool>());
    }
    doc.worlds.push_back(std::move(w));
  }

  const auto& stereotypes = root["stereotypes"];
  if (!stereotypes.is_array()) format_error("/stereotypes", "expected an array");
  for (std::size_t i = 0; i < stereotypes.size(); ++i) {
    const auto loc = "/stereotypes/" + std::to_string(i);
    require_fields(stereotypes[i], loc, {"name"}, {"worlds", "formula"});
    const auto& s = stereotypes[i];
    if (s.contains("worlds") == s.contains("formula")) {
      format_error(loc, "exactly one of 'worlds' or 'formula' is required");
    }
    StereotypeDoc sd;
    sd.name = as_string(s["name"], loc + "/name");
    if (s.contains("worlds")) sd.worlds = as_string_array(s["worlds"], loc + "/worlds");
    if (s.contains("formula")) sd.formula = as_string(s["formula"], loc + "/formula");
    doc.stereotypes.push_back(std::move(sd));
  }

  doc.distance = parse_distance(root["distance"]);
  return doc;
}

// }}}
// {{{ document -> model

namespace {

struct Resolution {
  std::vector<Violation> violations;
  std::optional<KnowledgeBase> kb;
};

Resolution resolve(const KbDocument& doc) {
  Resolution res;
  auto& out = res.violations;

  std::vector<World> worlds;
  for (std::size_t i = 0; i < doc.worlds.size(); ++i) {
    const auto& wd = doc.worlds[i];
    const auto loc = "/worlds/" + std::to_string(i) + "/valuation";
    World w{wd.name, 0};
    std::set<std::string, std::less<>> assigned;
    for (const auto& [atom, truth] : wd.valuation) {
      const auto it = std::find(doc.atoms.begin(), doc.atoms.end(), atom);
      if (it == doc.atoms.end()) {
        out.push_back({ViolationKind::UnknownAtom, loc + "/" + atom, "undeclared atom '" + atom + "'"});
        continue;
      }
      assigned.insert(atom);
      const auto a = static_cast<std::size_t>(it - doc.atoms.begin());
      if (truth && a < 64) w.valuation |= std::uint64_t{1} << a;
    }
    for (const auto& atom : doc.atoms) {
      if (!assigned.count(atom)) {
        out.push_back({ViolationKind::FormatError, loc, "valuation of '" + wd.name +
                                                              "' omits atom '" + atom + "'"});
      }
    }
    worlds.push_back(std::move(w));
  }
  {
    auto space_problems = WorldSpace::check(doc.atoms, worlds);
    out.insert(out.end(), space_problems.begin(), space_problems.end());
  }
  if (!out.empty()) return res;
  const WorldSpace space(doc.atoms, worlds);

  std::vector<Stereotype> stereotypes;
  for (std::size_t i = 0; i < doc.stereotypes.size(); ++i) {
    const auto& sd = doc.stereotypes[i];
    const auto loc = "/stereotypes/" + std::to_string(i);
    Stereotype s{sd.name, InfoSet{}};
    if (sd.worlds) {
      for (std::size_t j = 0; j < sd.worlds->size(); ++j) {
        const auto& wname = (*sd.worlds)[j];
        if (const auto w = space.world_index(wname)) {
          s.extent |= InfoSet::singleton(*w);
        } else {
          out.push_back({ViolationKind::UnknownWorld, loc + "/worlds/" + std::to_string(j),
                         "unknown world '" + wname + "'"});
        }
      }
    } else if (sd.formula) {
      try {
        s.extent = models(parse_formula(*sd.formula, space), space);
      } catch (const UnknownAtom& e) {
        out.push_back({ViolationKind::UnknownAtom, loc + "/formula", e.what()});
      } catch (const SyntaxError& e) {
        out.push_back({ViolationKind::SyntaxError, loc + "/formula", e.what()});
      }
    }
    stereotypes.push_back(std::move(s));
  }

  const auto stereotype_of = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < doc.stereotypes.size(); ++i) {
      if (doc.stereotypes[i].name == name) return i;
    }
    return std::nullopt;
  };

  DistanceFamily family;
  const auto& dd = doc.distance;
  const std::string dloc = "/distance";
  if (dd.family == "constant") {
    family = ConstantFamily{};
  } else if (dd.family == "cardinality") {
    family = CardinalityFamily{};
  } else if (dd.family == "min-world") {
    MinWorldFamily mw;
    std::vector<std::optional<std::uint64_t>> rank(space.size());
    for (const auto& [wname, r] : dd.rank.value_or(decltype(dd.rank)::value_type{})) {
      const auto w = space.world_index(wname);
      if (!w) {
        out.push_back({ViolationKind::UnknownWorld, dloc + "/rank/" + wname, "unknown world '" + wname + "'"});
      } else if (r < 0) {
        out.push_back({ViolationKind::DistanceSpecError, dloc + "/rank/" + wname, "rank must be nonnegative"});
      } else if (rank[*w]) {
        out.push_back({ViolationKind::DistanceSpecError, dloc + "/rank/" + wname, "rank given twice"});
      } else {
        rank[*w] = static_cast<std::uint64_t>(r);
      }
    }
    for (std::size_t w = 0; w < rank.size(); ++w) {
      if (!rank[w]) {
        out.push_back({ViolationKind::DistanceSpecError, dloc + "/rank",
                       "no rank for world '" + space.worlds()[w].name + "'"});
      } else {
        mw.rank.push_back(*rank[w]);
      }
    }
    family = std::move(mw);
  } else if (dd.family == "partition-cover") {
    PartitionCoverFamily pc;
    const auto order = dd.order.value_or(std::vector<std::string>{});
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (const auto s = stereotype_of(order[i])) {
        pc.order.push_back(*s);
      } else {
        out.push_back({ViolationKind::UnknownStereotype, dloc + "/order/" + std::to_string(i),
                       "unknown stereotype '" + order[i] + "'"});
      }
    }
    family = std::move(pc);
  } else if (dd.family == "table") {
    const std::size_t k = doc.stereotypes.size();
    if (space.size() > kMaxTableWorlds) {
      out.push_back({ViolationKind::DistanceSpecError, dloc + "/entries",
                     "table distances support at most " + std::to_string(kMaxTableWorlds) + " worlds"});
      return res;
    }
    const std::size_t rows = std::size_t{1} << space.size();
    std::vector<std::optional<DistanceValue>> cells(rows * k);
    const auto entries = dd.entries.value_or(std::vector<TableEntryDoc>{});
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const auto eloc = dloc + "/entries/" + std::to_string(i);
      InfoSet set;
      bool ok = true;
      for (const auto& wname : e.worlds) {
        const auto w = space.world_index(wname);
        if (!w) {
          out.push_back({ViolationKind::UnknownWorld, eloc + "/worlds", "unknown world '" + wname + "'"});
          ok = false;
        } else if (set.contains(*w)) {
          out.push_back({ViolationKind::DistanceSpecError, eloc + "/worlds", "world '" + wname + "' repeated"});
          ok = false;
        } else {
          set |= InfoSet::singleton(*w);
        }
      }
      const auto s = stereotype_of(e.stereotype);
      if (!s) {
        out.push_back({ViolationKind::UnknownStereotype, eloc + "/stereotype",
                       "unknown stereotype '" + e.stereotype + "'"});
        ok = false;
      }
      if (!ok) continue;
      auto& cell = cells[set.bits() * k + *s];
      if (cell) {
        out.push_back({ViolationKind::DistanceSpecError, eloc,
                       "duplicate entry for " + space.format(set) + " and '" + e.stereotype + "'"});
      }
      cell = e.value;
    }
    TableFamily table;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!cells[c]) {
        out.push_back({ViolationKind::DistanceSpecError, dloc + "/entries",
                       "missing entry for " + space.format(InfoSet(c / k)) + " and '" +
                           doc.stereotypes[c % k].name + "'"});
        break;
      }
      table.values.push_back(*cells[c]);
    }
    family = std::move(table);
  } else {
    out.push_back({ViolationKind::FormatError, dloc + "/family", "unknown distance family '" + dd.family + "'"});
  }

  if (!out.empty()) return res;
  auto model_problems = KnowledgeBase::check(space, stereotypes, family);
  if (!model_problems.empty()) {
    out = std::move(model_problems);
    return res;
  }
  res.kb.emplace(space, std::move(stereotypes), std::move(family));
  return res;
}

}  // namespace

std::vector<Violation> validate_kb(const KbDocument& document) { return resolve(document).violations; }

KnowledgeBase resolve_kb(const KbDocument& document) {
  auto res = resolve(document);
  if (!res.violations.empty()) throw KbError(std::move(res.violations.front()));
  return std::move(*res.kb);
}

KnowledgeBase load_kb(std::string_view json_text) { return resolve_kb(parse_kb_document(json_text)); }

KnowledgeBase load_kb_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KbError({ViolationKind::FormatError, "", "cannot read '" + path.string() + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_kb(ss.str());
}

// }}}
// {{{ model -> document / JSON

KbDocument to_document(const KnowledgeBase& kb) {
  const auto& space = kb.space();
  KbDocument doc;
  doc.atoms = space.atoms();
  for (const auto& w : space.worlds()) {
    WorldDoc wd{w.name, {}};
    for (std::size_t a = 0; a < space.atoms().size(); ++a) wd.valuation.emplace_back(space.atoms()[a], w.holds(a));
    doc.worlds.push_back(std::move(wd));
  }
  for (const auto& s : kb.stereotypes()) doc.stereotypes.push_back({s.name, space.names(s.extent), std::nullopt});

  doc.distance.family = family_name(kb.distance());
  if (const auto* mw = std::get_if<MinWorldFamily>(&kb.distance())) {
    doc.distance.rank.emplace();
    for (std::size_t w = 0; w < mw->rank.size(); ++w) {
      doc.distance.rank->emplace_back(space.worlds()[w].name, static_cast<std::int64_t>(mw->rank[w]));
    }
  } else if (const auto* pc = std::get_if<PartitionCoverFamily>(&kb.distance())) {
    doc.distance.order.emplace();
    for (auto i : pc->order) doc.distance.order->push_back(kb.stereotype(i).name);
  } else if (const auto* table = std::get_if<TableFamily>(&kb.distance())) {
    doc.distance.entries.emplace();
    const std::size_t k = kb.stereotype_count();
    for (std::size_t c = 0; c < table->values.size(); ++c) {
      doc.distance.entries->push_back({space.names(InfoSet(c / k)), kb.stereotype(c % k).name, table->values[c]});
    }
  }
  return doc;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  const KbDocument doc = to_document(kb);
  ordered_json root;
  root["atoms"] = doc.atoms;
  root["worlds"] = ordered_json::array();
  for (const auto& w : doc.worlds) {
    ordered_json valuation = ordered_json::object();
    for (const auto& [atom, truth] : w.valuation) valuation[atom] = truth;
    root["worlds"].push_back({{"name", w.name}, {"valuation", valuation}});
  }
  root["stereotypes"] = ordered_json::array();
  for (const auto& s : doc.stereotypes) root["stereotypes"].push_back({{"name", s.name}, {"worlds", *s.worlds}});
  ordered_json distance;
  distance["family"] = doc.distance.family;
  if (doc.distance.rank) {
    distance["rank"] = ordered_json::object();
    for (const auto& [w, r] : *doc.distance.rank) distance["rank"][w] = r;
  }
  if (doc.distance.order) distance["order"] = *doc.distance.order;
  if (doc.distance.entries) {
    distance["entries"] = ordered_json::array();
    for (const auto& e : *doc.distance.entries) {
      distance["entries"].push_back(
          {{"worlds", e.worlds}, {"stereotype", e.stereotype}, {"value", e.value.to_string()}});
    }
  }
  root["distance"] = distance;
  return root.dump(2) + "\n";
}

// }}}

}  // namespace stereo
