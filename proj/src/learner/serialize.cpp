#include "cplearn/learner/serialize.hpp"

#include <iomanip>

#include "cplearn/core/errors.hpp"

namespace cplearn {

nlohmann::json to_json(const LearnResult& result) {
  const auto& expansion = std::get<BasisExpansion>(result.phi_hat.form());
  return {{"basis", to_string(expansion.basis.kind())},
          {"Q", expansion.basis.size()},
          {"domain", expansion.basis.domain()},
          {"coeffs", std::vector<double>(result.coeffs.data(), result.coeffs.data() + result.coeffs.size())},
          {"empirical_error", result.empirical_error},
          {"rank_deficient", result.rank_deficient},
          {"solve_method", result.solve_method}};
}

CouplingFunction coupling_from_json(const nlohmann::json& j) {
  try {
    const auto kind = basis_kind_from_string(j.at("basis").get<std::string>());
    const int q = j.at("Q").get<int>();
    const auto coeffs = j.at("coeffs").get<std::vector<double>>();
    if (static_cast<int>(coeffs.size()) != q) throw ConfigError("coefficient count does not match Q");
    BasisFamily basis(kind, q, j.at("domain").get<double>());
    return CouplingFunction::expansion(
        basis, Eigen::Map<const Eigen::VectorXd>(coeffs.data(), q), Extension::Clamp);
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError(std::string("malformed learned coupling: ") + err.what());
  }
}

void write_report_header(std::ostream& out) {
  out << "T,seed,E_T,E_T_excess,noise_floor,l2_rho_error,kl\n";
}

void write_report_row(std::ostream& out, const EvaluationReport& report) {
  out << std::setprecision(12) << report.T << ',' << report.seed << ',' << report.empirical_error
      << ',' << report.excess_error << ',' << report.noise_floor << ',' << report.l2_rho_error << ',';
  if (report.kl) out << *report.kl;
  out << '\n';
}

void write_nu_table(std::ostream& out, const WeightedErrorTable& table) {
  out << "r,phi,phi_hat,rho,nu,sq_error\n" << std::setprecision(12);
  for (std::size_t b = 0; b < table.centers.size(); ++b) {
    out << table.centers[b] << ',' << table.phi[b] << ',' << table.phi_hat[b] << ','
        << table.mass[b] / table.width << ',' << table.nu[b] << ',' << table.sq_error[b] << '\n';
  }
}

}  // namespace cplearn
