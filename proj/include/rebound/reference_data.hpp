#pragma once

#include "rebound/model.hpp"

namespace rebound::reference {

// Five balanced groups of ten simulated observations, stored as rounded
// summaries.
Dataset five_group_data();
// Three balanced groups of four simulated observations.
Dataset three_group_data();

// Prior settings used with five_group_data(); `index` runs from 1 to 4.
// Settings 2 to 4 centre the prior mean of mu at the grand mean.
Hyperparameters five_group_prior(int index, const Dataset& ds);
// Informative prior used with three_group_data().
Hyperparameters three_group_prior();

}  // namespace rebound::reference
