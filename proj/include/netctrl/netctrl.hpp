#pragma once

#include "netctrl/errors.hpp"
#include "netctrl/rational.hpp"
#include "netctrl/rat_matrix.hpp"
#include "netctrl/exact_rank.hpp"
#include "netctrl/float_linalg.hpp"
#include "netctrl/zero_pattern.hpp"
#include "netctrl/strong_components.hpp"
#include "netctrl/graph.hpp"
#include "netctrl/ctrb_matrix.hpp"
#include "netctrl/reachability.hpp"
#include "netctrl/equitable_partition.hpp"
#include "netctrl/ctrb_analysis.hpp"
#include "netctrl/extensions.hpp"
#include "netctrl/steering.hpp"
#include "netctrl/random_fixtures.hpp"
