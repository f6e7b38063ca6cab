#include "rebound/reference_data.hpp"

#include "rebound/errors.hpp"

namespace rebound::reference {

Dataset five_group_data() {
  return Dataset::from_summaries({10, 10, 10, 10, 10}, {-0.80247, -1.0014, -0.69090, -1.1413, -1.0125}, 32.990);
}

Dataset three_group_data() {
  return Dataset::from_summaries({4, 4, 4}, {-0.54816, 0.92516, -0.19924}, 20.285);
}

Hyperparameters five_group_prior(int index, const Dataset& ds) {
  Hyperparameters h;
  h.s0 = 1.0;
  switch (index) {
    case 1:
      h.a1 = 2.5, h.b1 = 1.0, h.a2 = 1.0, h.b2 = 1.0, h.m0 = 0.0;
      break;
    case 2:
      h.a1 = 2.5, h.b1 = 1.0, h.a2 = 1.0, h.b2 = 1.0, h.m0 = ds.ybar_grand;
      break;
    case 3:
      h.a1 = h.b1 = h.a2 = h.b2 = 0.1;
      h.m0 = ds.ybar_grand;
      break;
    case 4:
      h.a1 = h.b1 = h.a2 = h.b2 = 0.01;
      h.m0 = ds.ybar_grand;
      break;
    default:
      throw Error(ErrorKind::DomainError, "prior setting index must be 1..4");
  }
  return h;
}

Hyperparameters three_group_prior() {
  Hyperparameters h;
  h.a1 = 5.0;
  h.a2 = 2.0;
  h.b1 = 20.0;
  h.b2 = 20.0;
  h.m0 = 0.0;
  h.s0 = 4.0;
  return h;
}

}  // namespace rebound::reference
