#pragma once

#include "rebound/certificates.hpp"
#include "rebound/model.hpp"
#include "rebound/planning.hpp"

#include <json.hpp>

#include <string>

namespace rebound::report {

using Json = nlohmann::ordered_json;

// Pretty JSON with every floating-point value printed to 17 significant
// digits. Non-finite values become null.
std::string dump(const Json& j);

std::string format_double(double v);

Json dataset_summary(const Dataset& ds);
Json hyperparameters(const Hyperparameters& h);
Json block_drift(const BlockDriftCertificate& c);
Json gibbs_drift(const GibbsDriftCertificate& c);
Json minorization(const MinorizationCertificate& m);
Json geometric(const GeometricDriftCertificate& g);
Json state(const ChainState& s);
Json burnin(const BurninResult& r);
Json point(const ParameterPoint& p);
Json evaluation(const PointEvaluation& ev);

}  // namespace rebound::report
