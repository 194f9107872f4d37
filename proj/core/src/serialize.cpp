#include "spider/serialize.hpp"

#include <charconv>
#include <cmath>

namespace spider {

namespace {

nlohmann::json coeffs_json(const Bivariate& poly) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : poly.descending()) {
    nlohmann::json inner = nlohmann::json::array();
    for (const auto& c : row) {
      inner.push_back(to_string(c));
    }
    out.push_back(std::move(inner));
  }
  return out;
}

// A polynomial in p alone, as a flat list over decreasing powers of p.
nlohmann::json p_coeffs_json(const Bivariate& poly) { return coeffs_json(poly).front(); }

template <class T>
T field_as(const nlohmann::json& json, const char* key) {
  try {
    return json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(key, std::string("invalid value (") + e.what() + ")");
  }
}

}  // namespace

nlohmann::json catalog_entry_to_json(const MomentCatalogEntry& entry) {
  nlohmann::json j;
  j["index"] = entry.index.name();
  j["exact"] = entry.exact;
  j["mean_label"] = entry.mean_label;
  j["var_label"] = entry.variance_label;
  j["mean_coeffs"] = coeffs_json(entry.mean.numerator);
  j["mean_denominator"] = coeffs_json(entry.mean.denominator);
  j["var_coeffs"] = coeffs_json(entry.variance.numerator);
  j["var_denominator"] = coeffs_json(entry.variance.denominator);
  if (entry.limit) {
    j["limit"] = {{"p_coeffs", p_coeffs_json(entry.limit->value)},
                  {"scaling_exponent", entry.limit->scaling_exponent}};
  } else {
    j["limit"] = nullptr;
  }
  if (entry.clt) {
    j["clt_center"] = coeffs_json(entry.clt->center);
    j["clt_scale"] = {{"factor", to_string(entry.clt->factor)},
                      {"p_coeffs", p_coeffs_json(entry.clt->scale_p)},
                      {"n_plus_k_power", entry.clt->n_power}};
  } else {
    j["clt_center"] = nullptr;
    j["clt_scale"] = nullptr;
  }
  return j;
}

nlohmann::json config_to_json(const SimConfig& config) {
  nlohmann::json indices = nlohmann::json::array();
  for (const auto& index : config.indices) {
    indices.push_back(index.name());
  }
  return {{"model", config.model.name()},
          {"n", config.n},
          {"replicates", config.replicates},
          {"master_seed", config.master_seed},
          {"indices", indices},
          {"clt_shift", config.clt_shift},
          {"ks", config.ks},
          {"threads", config.threads}};
}

SimConfig config_from_json(const nlohmann::json& json, SimConfig base) {
  if (!json.is_object()) {
    throw ConfigError("config", "expected a JSON object");
  }
  for (const auto& [key, value] : json.items()) {
    if (key == "model") {
      try {
        base.model = GrowthModel::parse(field_as<std::string>(json, "model"));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError("model", e.what());
      }
    } else if (key == "n") {
      base.n = field_as<std::uint64_t>(json, "n");
    } else if (key == "replicates") {
      base.replicates = field_as<std::uint64_t>(json, "replicates");
    } else if (key == "master_seed") {
      base.master_seed = field_as<std::uint64_t>(json, "master_seed");
    } else if (key == "indices") {
      base.indices.clear();
      for (const auto& name : field_as<std::vector<std::string>>(json, "indices")) {
        try {
          base.indices.push_back(IndexSpec::parse(name));
        } catch (const std::invalid_argument& e) {
          throw ConfigError("indices", e.what());
        }
      }
    } else if (key == "clt_shift") {
      base.clt_shift = field_as<double>(json, "clt_shift");
    } else if (key == "ks") {
      base.ks = field_as<bool>(json, "ks");
    } else if (key == "threads") {
      base.threads = field_as<unsigned>(json, "threads");
    } else {
      throw ConfigError(key, "unknown configuration field");
    }
  }
  return base;
}

nlohmann::json summary_to_json(const SampleSummary& summary, const SimConfig& config) {
  nlohmann::json indices = nlohmann::json::array();
  for (const auto& s : summary.indices) {
    nlohmann::json item{{"index", s.index.name()},
                        {"count", s.count},
                        {"mean", s.mean},
                        {"variance", s.variance}};
    item["ks"] = s.ks ? nlohmann::json(*s.ks) : nlohmann::json(nullptr);
    indices.push_back(std::move(item));
  }
  return {{"config", config_to_json(config)},
          {"direct_checks", summary.direct_checks},
          {"indices", indices}};
}

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return ec == std::errc() ? std::string(buffer, end) : std::to_string(x);
}

void write_table(std::ostream& out, const std::vector<TableRow>& rows) {
  auto cell = [&](const std::optional<double>& v) {
    out << ',';
    if (v) {
      out << format_double(*v);
    }
  };
  out << kTableHeader << '\n';
  for (const auto& row : rows) {
    out << row.index << ',' << row.n << ',' << format_double(row.p);
    cell(row.mean);
    cell(row.var);
    cell(row.ks);
    cell(row.exceedance);
    cell(row.r_mean_error);
    cell(row.limit);
    out << '\n';
  }
}

}  // namespace spider
