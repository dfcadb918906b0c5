#pragma once

#include "graph.hpp"
#include "graph_json.hpp"
#include "laurent.hpp"
#include "mutation.hpp"
#include "number.hpp"
#include "periods.hpp"
#include "potential.hpp"
#include "rational_expr.hpp"
#include "running_power.hpp"
#include "series.hpp"
#include "tqft.hpp"
