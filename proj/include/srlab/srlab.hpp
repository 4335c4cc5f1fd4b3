// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srlab/core/errors.hpp"
#include "srlab/core/exact_ops.hpp"
#include "srlab/core/float_format.hpp"
#include "srlab/core/neighbors.hpp"
#include "srlab/core/parse.hpp"
#include "srlab/core/soft_value.hpp"
#include "srlab/rounding/op_trace.hpp"
#include "srlab/rounding/rng_stream.hpp"
#include "srlab/rounding/round.hpp"
#include "srlab/rounding/rounding_mode.hpp"
#include "srlab/algorithms/horner.hpp"
#include "srlab/algorithms/summation.hpp"
#include "srlab/bounds/bounds.hpp"
