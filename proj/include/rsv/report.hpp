#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rsv/kernels.hpp"
#include "rsv/laplace.hpp"
#include "rsv/level1.hpp"
#include "rsv/solver.hpp"
#include "rsv/volterra.hpp"

namespace rsv {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const ConditionReport& rep);
Json to_json(const ContractionEstimate& est);
Json to_json(const Solution& sol);
Json to_json(const LaplaceResult& res);
Json to_json(const DictionaryReport& rep);
Json to_json(const UniquenessReport& rep);
Json to_json(const SingularPoint& sp);

/// Columns re_z,im_z,re_phi,im_phi,tail_bound under a '#' header with theta, alpha, Lambda, T.
void write_laplace_csv(std::ostream& os, const LaplaceResult& res);
void write_laplace_csv(const std::string& path, const LaplaceResult& res);

}  // namespace rsv
