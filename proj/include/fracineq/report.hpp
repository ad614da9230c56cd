#ifndef FRACINEQ_REPORT_HPP
#define FRACINEQ_REPORT_HPP

#include <string>

#include "fracineq/campaign.hpp"

namespace fracineq {

/// CSV header, one row per case. The column order is part of the report schema.
inline constexpr const char* kCsvHeader =
    "case_id,suite,variant,alpha,beta,rho,eta,kappa,a,gamma,x,seed,lhs,rhs,margin,residual";

/// Full report. `wall_time_seconds` is the last member and the only field
/// that differs between runs of the same config.
std::string render_json(const Report& report);

/// Reals use %.17g; absent gamma is an empty field.
std::string render_csv(const Report& report);

std::string render(const Report& report, const std::string& format);

/// Plain-text per-suite summary for the terminal.
std::string render_summary(const Report& report);

}  // namespace fracineq

#endif  // FRACINEQ_REPORT_HPP
