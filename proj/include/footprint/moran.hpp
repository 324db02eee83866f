#pragma once

#include <cstdint>
#include <span>

#include "footprint/spatial_weights.hpp"

namespace footprint {

struct MoranResult {
  double I = 0.0;
  double expected = 0.0;  // -1/(n-1)
  double z_score = 0.0;   // NaN when the randomization variance is undefined (n < 4)
  double p_value = 0.0;   // two-sided analytical p; NaN when z_score is NaN
  double perm_p = 0.0;    // one-sided pseudo p toward the observed sign
  double perm_mean = 0.0;
  double perm_sd = 0.0;
  int permutations = 0;
  std::uint64_t seed = 0;
};

// Global Moran's I with analytical inference under the randomization
// assumption plus full-vector permutation inference. Constant input or empty
// weights are numeric errors.
MoranResult global_moran(std::span<const double> values, const SpatialWeights& W,
                         int permutations = 999, std::uint64_t seed = 0, int jobs = 1);

enum class Quadrant { HH, LL, HL, LH, Isolated };
const char* quadrant_name(Quadrant q);

struct LisaZone {
  double local_i = 0.0;
  Quadrant quadrant = Quadrant::Isolated;
  double pseudo_p = 1.0;
  bool significant = false;
};

struct LisaResult {
  std::vector<LisaZone> zones;
  double alpha = 0.05;
  int permutations = 0;
  std::uint64_t seed = 0;
};

// Local Moran (LISA): I_i = (z_i/m2) * sum_j w_ij z_j with m2 = sum z^2 / n.
// Pseudo p by conditional permutation (z_i held fixed, neighbors drawn from
// the remaining n-1 values), (extreme+1)/(permutations+1), one-sided toward
// the observed sign. Zones without neighbors are Isolated, never significant.
LisaResult local_moran(std::span<const double> values, const SpatialWeights& W,
                       int permutations = 999, double alpha = 0.05, std::uint64_t seed = 0,
                       int jobs = 1);

}  // namespace footprint
