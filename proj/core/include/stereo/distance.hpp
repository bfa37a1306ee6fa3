#pragma once

#include <cstddef>

#include "stereo/distance_value.hpp"
#include "stereo/info_set.hpp"
#include "stereo/knowledge_base.hpp"

namespace stereo {

/// d(F, S) for the stereotype with the given index, under the KB's distance family.
DistanceValue distance(const KnowledgeBase& kb, InfoSet given, std::size_t stereotype);

}  // namespace stereo
