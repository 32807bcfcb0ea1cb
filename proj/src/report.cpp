#include "rsv/report.hpp"

#include <fstream>
#include <iomanip>

#include "rsv/error.hpp"

namespace rsv {

Json to_json(Complex z) { return Json::array({z.real() + 0.0, z.imag() + 0.0}); }  // no signed zeros

Json to_json(const ConditionReport& rep) {
  Json j;
  j["condition"] = rep.condition;
  j["verified"] = rep.verified;
  Json c = Json::object();
  for (const auto& [k, v] : rep.constants) c[k] = v;
  j["constants"] = c;
  if (rep.witness) j["witness"] = {{"t", rep.witness->t}, {"t_prime", rep.witness->t_prime}, {"margin", rep.witness->margin}};
  j["reasons"] = rep.reasons;
  return j;
}

Json to_json(const ContractionEstimate& est) {
  return {{"rho", est.rho},
          {"lambda", est.lambda},
          {"near_factor", est.near_factor},
          {"far_factor", est.far_factor},
          {"overall", est.overall},
          {"delta_split", est.delta_split}};
}

Json to_json(const Solution& sol) {
  return {{"tau", sol.tau},
          {"rho", sol.rho},
          {"lambda", sol.lambda},
          {"delta", sol.delta},
          {"iterations", sol.iterations},
          {"final_residual", sol.final_residual},
          {"volterra_residual", sol.volterra_residual},
          {"leading_constant", to_json(sol.M)},
          {"contraction", to_json(sol.contraction)},
          {"T", sol.f.grid ? sol.f.grid->T() : 0.0}};
}

Json to_json(const LaplaceResult& res) {
  Json samples = Json::array();
  for (std::size_t k = 0; k < res.z.size(); ++k)
    samples.push_back({{"z", to_json(res.z[k])}, {"Phi", to_json(res.phi[k])}, {"tail_bound", res.tail_bound[k]}});
  return {{"theta", res.theta}, {"alpha", to_json(res.alpha)}, {"lambda", res.lambda}, {"T", res.T}, {"samples", samples}};
}

Json to_json(const DictionaryReport& rep) {
  return {{"fractional_mismatch", rep.fractional_mismatch},
          {"multiplication_mismatch", rep.multiplication_mismatch},
          {"tail", rep.tail}};
}

Json to_json(const UniquenessReport& rep) {
  return {{"rho", rep.rho},
          {"rho_alt", rep.rho_alt},
          {"lambda_alt", rep.lambda_alt},
          {"weighted_difference", rep.difference.weighted},
          {"relative_difference", rep.difference.relative_sup},
          {"agree", rep.agree}};
}

Json to_json(const SingularPoint& sp) {
  return {{"alpha", to_json(sp.alpha)}, {"tau", to_json(sp.tau_exact)}, {"admissible", sp.admissible}};
}

void write_laplace_csv(std::ostream& os, const LaplaceResult& res) {
  os << std::setprecision(17);
  os << "# theta=" << res.theta << " alpha=" << res.alpha.real() << "," << res.alpha.imag() << " Lambda=" << res.lambda
     << " T=" << res.T << "\n";
  os << "re_z,im_z,re_phi,im_phi,tail_bound\n";
  for (std::size_t k = 0; k < res.z.size(); ++k)
    os << res.z[k].real() << "," << res.z[k].imag() << "," << res.phi[k].real() << "," << res.phi[k].imag() << ","
       << res.tail_bound[k] << "\n";
}

void write_laplace_csv(const std::string& path, const LaplaceResult& res) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::ConfigError, "cannot write " + path);
  write_laplace_csv(os, res);
}

}  // namespace rsv
