#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spider/catalog.hpp"
#include "spider/mc.hpp"

namespace spider {

/// Coefficients are exact rationals written as strings ("-19/2"). Polynomials
/// list coefficients for decreasing powers of n; each coefficient is itself a
/// list over decreasing powers of p.
///
///   {index, exact, mean_label, var_label,
///    mean_coeffs, mean_denominator, var_coeffs, var_denominator,
///    limit: {p_coeffs, scaling_exponent} | null,
///    clt_center: <coeffs> | null,
///    clt_scale: {factor, p_coeffs, n_plus_k_power} | null}
nlohmann::json catalog_entry_to_json(const MomentCatalogEntry& entry);

/// Field names match SimConfig. `model` is "uniform:<p>" or "preferential";
/// `indices` is a list of index names.
nlohmann::json config_to_json(const SimConfig& config);

/// Applies the fields present in `json` on top of `base`. Unknown keys and
/// ill-typed values raise ConfigError naming the field.
SimConfig config_from_json(const nlohmann::json& json, SimConfig base = {});

nlohmann::json summary_to_json(const SampleSummary& summary, const SimConfig& config);

/// One row of the per-n tables written by the simulate, clt and converge
/// commands. Absent values are written as empty fields.
struct TableRow {
  std::string index;
  std::uint64_t n = 0;
  double p = 0.0;
  std::optional<double> mean;
  std::optional<double> var;
  std::optional<double> ks;
  std::optional<double> exceedance;
  std::optional<double> r_mean_error;
  std::optional<double> limit;
};

inline constexpr const char* kTableHeader =
    "index,n,p,mean,var,ks,exceedance,r_mean_error,limit";

void write_table(std::ostream& out, const std::vector<TableRow>& rows);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace spider
