#pragma once

#include "ptent/analysis/csv.hpp"
#include "ptent/analysis/cycles.hpp"
#include "ptent/analysis/lyapunov.hpp"
#include "ptent/analysis/statistics.hpp"
#include "ptent/comparison.hpp"
#include "ptent/core_map.hpp"
#include "ptent/errors.hpp"
#include "ptent/netlist.hpp"
#include "ptent/netlist_io.hpp"
