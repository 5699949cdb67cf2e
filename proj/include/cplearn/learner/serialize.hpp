#pragma once

#include <ostream>
#include <vector>

#include "json.hpp"

#include "cplearn/learner/evaluate.hpp"
#include "cplearn/learner/problem.hpp"

namespace cplearn {

/// {basis, Q, coeffs, empirical_error, rank_deficient, solve_method}.
nlohmann::json to_json(const LearnResult& result);

/// Restores the learned expansion from to_json output.
CouplingFunction coupling_from_json(const nlohmann::json& j);

/// Header row for write_report_row.
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const EvaluationReport& report);

/// r, phi, phi_hat, rho, nu, sq_error per bin center.
void write_nu_table(std::ostream& out, const WeightedErrorTable& table);

}  // namespace cplearn
