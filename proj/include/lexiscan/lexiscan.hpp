#pragma once

#include "lexiscan/baselines.hpp"
#include "lexiscan/bench.hpp"
#include "lexiscan/cdawg.hpp"
#include "lexiscan/distance.hpp"
#include "lexiscan/filter.hpp"
#include "lexiscan/index_io.hpp"
#include "lexiscan/lexicon.hpp"
#include "lexiscan/operations.hpp"
#include "lexiscan/query_tree.hpp"
#include "lexiscan/scdawg.hpp"
#include "lexiscan/search.hpp"
#include "lexiscan/symbol.hpp"
