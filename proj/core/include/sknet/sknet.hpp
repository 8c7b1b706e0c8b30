#pragma once

#include "sknet/classification.hpp"
#include "sknet/clustering.hpp"
#include "sknet/connectivity.hpp"
#include "sknet/csr.hpp"
#include "sknet/datasets.hpp"
#include "sknet/embedding.hpp"
#include "sknet/error.hpp"
#include "sknet/generators.hpp"
#include "sknet/graph.hpp"
#include "sknet/hierarchy.hpp"
#include "sknet/io.hpp"
#include "sknet/linear_op.hpp"
#include "sknet/parallel.hpp"
#include "sknet/partition.hpp"
#include "sknet/ranking.hpp"
#include "sknet/viz.hpp"
