#pragma once

#include "bots/error.hpp"
#include "bots/graph.hpp"
#include "bots/grid.hpp"
#include "bots/composite.hpp"
#include "bots/instance_io.hpp"
#include "bots/partition.hpp"
#include "bots/count.hpp"
#include "bots/predict.hpp"
#include "bots/search.hpp"
#include "bots/delay.hpp"
#include "bots/top_path.hpp"
#include "bots/bench.hpp"
#include "bots/service.hpp"
