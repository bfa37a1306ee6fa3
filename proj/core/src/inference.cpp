#include "stereo/inference.hpp"

#include <algorithm>

#include "stereo/distance.hpp"
#include "stereo/error.hpp"

namespace stereo {

namespace {

std::vector<DistanceValue> all_distances(const KnowledgeBase& kb, InfoSet given) {
  std::vector<DistanceValue> out;
  out.reserve(kb.stereotype_count());
  for (std::size_t i = 0; i < kb.stereotype_count(); ++i) out.push_back(distance(kb, given, i));
  return out;
}

std::vector<std::string> names_of(const KnowledgeBase& kb, const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  for (auto i : indices) out.push_back(kb.stereotype(i).name);
  return out;
}

}  // namespace

std::vector<std::size_t> minimal_stereotypes(const std::vector<DistanceValue>& distances) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (out.empty() || distances[i] < distances[out.front()]) {
      out.assign(1, i);
    } else if (distances[i] == distances[out.front()]) {
      out.push_back(i);
    }
  }
  return out;
}

std::size_t best_stereotype(const KnowledgeBase& kb, InfoSet given) {
  if (given.empty()) throw EmptyInfoSet();
  const auto minimal = minimal_stereotypes(all_distances(kb, given));
  if (minimal.size() != 1) throw NoUniqueMinimum(names_of(kb, minimal));
  return minimal.front();
}

InferenceResult nm_consequences(const KnowledgeBase& kb, InfoSet given) {
  InferenceResult r;
  r.given = given;
  r.distances = all_distances(kb, given);
  if (given.empty()) return r;
  const auto minimal = minimal_stereotypes(r.distances);
  if (minimal.size() != 1) throw NoUniqueMinimum(names_of(kb, minimal));
  r.chosen = minimal.front();
  r.consequences = given & kb.stereotype(*r.chosen).extent;
  r.consistent = !r.consequences.empty();
  return r;
}

bool nm_entails(const KnowledgeBase& kb, const Formula& alpha, const Formula& beta) {
  const auto& space = kb.space();
  return nm_consequences(kb, models(alpha, space)).consequences.subset_of(models(beta, space));
}

Formula stereotype_theory(const KnowledgeBase& kb, InfoSet given) {
  return canonical_formula(kb.stereotype(best_stereotype(kb, given)).extent, kb.space());
}

Formula consequence_closure(const KnowledgeBase& kb, const Formula& alpha) {
  return canonical_formula(nm_consequences(kb, models(alpha, kb.space())).consequences, kb.space());
}

ChoiceTable::ChoiceTable(const KnowledgeBase& kb, std::size_t max_worlds)
    : worlds_(kb.space().size()), stereotypes_(kb.stereotype_count()) {
  if (worlds_ > max_worlds) {
    throw ScaleLimit("tabulating " + std::to_string(worlds_) + " worlds exceeds the limit of " +
                     std::to_string(max_worlds));
  }
  for (const auto& s : kb.stereotypes()) extents_.push_back(s.extent);
  const std::size_t rows = set_count();
  distances_.reserve(rows * stereotypes_);
  chosen_.resize(rows);
  consequences_.resize(rows);
  std::vector<DistanceValue> row(stereotypes_);
  for (std::size_t bits = 0; bits < rows; ++bits) {
    const InfoSet given(bits);
    for (std::size_t i = 0; i < stereotypes_; ++i) {
      row[i] = stereo::distance(kb, given, i);
      distances_.push_back(row[i]);
    }
    if (given.empty()) continue;
    const auto minimal = minimal_stereotypes(row);
    if (minimal.size() == 1) {
      chosen_[bits] = minimal.front();
      consequences_[bits] = given & extents_[minimal.front()];
    } else {
      unique_ = false;
    }
  }
}

std::vector<std::size_t> ChoiceTable::co_minimal(InfoSet given) const {
  const auto first = distances_.begin() + static_cast<std::ptrdiff_t>(given.bits() * stereotypes_);
  return minimal_stereotypes(std::vector<DistanceValue>(first, first + static_cast<std::ptrdiff_t>(stereotypes_)));
}

}  // namespace stereo
