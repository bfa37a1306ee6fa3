#include "stereo/distance.hpp"

#include <variant>

namespace stereo {

DistanceValue distance(const KnowledgeBase& kb, InfoSet given, std::size_t stereotype) {
  const InfoSet extent = kb.stereotype(stereotype).extent;
  struct Visitor {
    const KnowledgeBase& kb;
    InfoSet given;
    InfoSet extent;
    std::size_t index;

    DistanceValue operator()(const ConstantFamily&) const { return 0; }

    DistanceValue operator()(const CardinalityFamily&) const {
      return static_cast<std::int64_t>((extent - given).size()) -
             static_cast<std::int64_t>((extent & given).size());
    }

    DistanceValue operator()(const MinWorldFamily& f) const {
      const std::size_t world = extent.lowest();
      if (!given.contains(world)) return DistanceValue::infinity();
      return static_cast<std::int64_t>(f.rank[world]);
    }

    DistanceValue operator()(const PartitionCoverFamily& f) const {
      const auto k = static_cast<std::int64_t>(f.order.size());
      std::int64_t position = 0;
      while (f.order[static_cast<std::size_t>(position)] != index) ++position;
      return DistanceValue(static_cast<std::int64_t>((extent - given).size())) + DistanceValue(position, k);
    }

    DistanceValue operator()(const TableFamily& f) const {
      const InfoSet clipped = given & kb.space().all();
      return f.values[clipped.bits() * kb.stereotype_count() + index];
    }
  };
  return std::visit(Visitor{kb, given, extent, stereotype}, kb.distance());
}

}  // namespace stereo
