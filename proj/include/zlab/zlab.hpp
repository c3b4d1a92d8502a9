#pragma once

// Point/box incidence laboratory: exact dyadic geometry, incidence counting
// and K_{k,k}-freeness, grid decompositions of certified sets, the iterated
// extremal family, and containment-order peeling with verified bookkeeping.

#include "zlab/config.hpp"
#include "zlab/dyadic.hpp"
#include "zlab/extremal.hpp"
#include "zlab/fit.hpp"
#include "zlab/grid.hpp"
#include "zlab/halving.hpp"
#include "zlab/incidence.hpp"
#include "zlab/io.hpp"
#include "zlab/peel.hpp"
#include "zlab/poset.hpp"
#include "zlab/randomgen.hpp"
#include "zlab/rectorder.hpp"
#include "zlab/region.hpp"
#include "zlab/split.hpp"
