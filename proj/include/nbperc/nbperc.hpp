#pragma once

#include "nbperc/edge_index.hpp"
#include "nbperc/error.hpp"
#include "nbperc/generators.hpp"
#include "nbperc/graph.hpp"
#include "nbperc/graph_ops.hpp"
#include "nbperc/pattern.hpp"
#include "nbperc/percolation.hpp"
#include "nbperc/spectral.hpp"
#include "nbperc/thresholds.hpp"
#include "nbperc/union_find.hpp"
