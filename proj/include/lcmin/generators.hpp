/**
 * @file generators.hpp
 * @brief Sequences used by the CLI `gen` command, the tests and the benchmark.
 */
#pragma once

#include <vector>

#include "lcmin/core.hpp"
#include "lcmin/rng.hpp"

namespace lcmin::gen {

/// M_alpha = exp((alpha_1+1)^2 (alpha_2+1)^2 - 1): coordinate-wise log-convex
/// but not log-convex. Throws InvalidArgument when an EXP entry overflows.
SequenceGrid paper_notconvex(std::vector<int> box, Scale scale = Scale::exp);

/// M_p = p!
SequenceGrid factorial(int n, Scale scale = Scale::exp);

/// M_alpha = alpha^{alpha/2} exp(max(alpha_1^2, alpha_2^2)).
SequenceGrid l37r_counterexample(std::vector<int> box, Scale scale = Scale::log);

/// a_alpha = u_alpha + |alpha|^2 with u uniform in [0, 1) and a_0 = 0.
SequenceGrid random_lifted(std::vector<int> box, SplitMix64& rng, Scale scale = Scale::log);

/// Uniform values in [lo, hi) with a_0 finite; each other entry is +inf with
/// probability `inf_prob`.
SequenceGrid random_values(std::vector<int> box, SplitMix64& rng, double lo, double hi, double inf_prob = 0.0);

/// a = sum of `terms` maxima of `pieces` random affine functions, plus
/// 0.5 |alpha|^2, shifted so that a_0 = 0. Convex by construction.
SequenceGrid random_convex(std::vector<int> box, SplitMix64& rng, int terms = 2, int pieces = 3);

}  // namespace lcmin::gen
