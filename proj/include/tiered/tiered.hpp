#pragma once

#include "tiered/graph.hpp"
#include "tiered/ida.hpp"
#include "tiered/independence.hpp"
#include "tiered/io.hpp"
#include "tiered/meek.hpp"
#include "tiered/ordering.hpp"
#include "tiered/orientation.hpp"
#include "tiered/paths.hpp"
#include "tiered/rng.hpp"
#include "tiered/simulation.hpp"
#include "tiered/tiers.hpp"
