#pragma once

// Umbrella header for the conditionally bi-free combinatorics library.

#include "bnc.hpp"
#include "chi.hpp"
#include "cumulants.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "independence.hpp"
#include "json_io.hpp"
#include "limits.hpp"
#include "lr.hpp"
#include "pair_cumulants.hpp"
#include "partition.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "repr.hpp"
#include "series.hpp"
#include "transforms.hpp"
