#pragma once

#include "whstab/config.hpp"
#include "whstab/constraint.hpp"
#include "whstab/dominance.hpp"
#include "whstab/errors.hpp"
#include "whstab/graph.hpp"
#include "whstab/jsr.hpp"
#include "whstab/lifting.hpp"
#include "whstab/outcome.hpp"
#include "whstab/report.hpp"
#include "whstab/satisfaction.hpp"
#include "whstab/state_space.hpp"
#include "whstab/systems.hpp"
