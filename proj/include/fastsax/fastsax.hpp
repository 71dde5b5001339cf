#pragma once

#include "fastsax/bench.hpp"
#include "fastsax/digest.hpp"
#include "fastsax/index.hpp"
#include "fastsax/ops.hpp"
#include "fastsax/pla.hpp"
#include "fastsax/query.hpp"
#include "fastsax/sax.hpp"
#include "fastsax/series.hpp"
#include "fastsax/ucr.hpp"
