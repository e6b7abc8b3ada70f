#pragma once

#include "pamc/catalog.hpp"
#include "pamc/config_file.hpp"
#include "pamc/engine.hpp"
#include "pamc/graph.hpp"
#include "pamc/record.hpp"
#include "pamc/results.hpp"
#include "pamc/rng.hpp"
#include "pamc/solve.hpp"
#include "pamc/spins.hpp"
