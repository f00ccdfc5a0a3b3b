#pragma once

#include "kickedtop/classical.hpp"
#include "kickedtop/entanglement.hpp"
#include "kickedtop/experiments.hpp"
#include "kickedtop/moment_set.hpp"
#include "kickedtop/parallel.hpp"
#include "kickedtop/random.hpp"
#include "kickedtop/spin.hpp"

namespace qkt {

inline constexpr const char* kVersion = KICKEDTOP_VERSION;

}  // namespace qkt
