#pragma once

#include <vector>

namespace qdistil {

// Yield bookkeeping for a multi-round protocol run. Yields already include
// the initial filtering probability, so cumulative equals their plain sum.
struct EfficiencyReport {
    std::vector<double> per_round_yields;
    double cumulative = 0.0;
    int rounds = 0;
};

}  // namespace qdistil
