#pragma once

#include "stereo/checkers.hpp"
#include "stereo/distance.hpp"
#include "stereo/distance_value.hpp"
#include "stereo/error.hpp"
#include "stereo/generators.hpp"
#include "stereo/inference.hpp"
#include "stereo/info_set.hpp"
#include "stereo/knowledge_base.hpp"
#include "stereo/logic.hpp"
#include "stereo/representability.hpp"
