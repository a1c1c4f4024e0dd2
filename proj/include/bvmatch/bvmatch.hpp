#pragma once

#include "bvmatch/allocator.hpp"
#include "bvmatch/discrete.hpp"
#include "bvmatch/error.hpp"
#include "bvmatch/flow_network.hpp"
#include "bvmatch/hall.hpp"
#include "bvmatch/instance.hpp"
#include "bvmatch/interval_set.hpp"
#include "bvmatch/max_flow.hpp"
#include "bvmatch/rational.hpp"
#include "bvmatch/subset_mask.hpp"
#include "bvmatch/venn_atoms.hpp"
#include "bvmatch/xi_emulator.hpp"
