#pragma once

#include "rankdepth/aggregation.hpp"
#include "rankdepth/depth.hpp"
#include "rankdepth/inference.hpp"
#include "rankdepth/io.hpp"
#include "rankdepth/models.hpp"
#include "rankdepth/pairwise.hpp"
#include "rankdepth/permutation.hpp"
#include "rankdepth/sample.hpp"
#include "rankdepth/survivor.hpp"
#include "rankdepth/trimming.hpp"
