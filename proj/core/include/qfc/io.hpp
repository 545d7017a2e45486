#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfc/fock.hpp"
#include "qfc/scheme.hpp"

namespace qfc {

using json = nlohmann::json;

// ---- density-matrix JSON: {"dim": d, "entries": [[re, im], ...]} row-major
json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

// ---- scheme override file:
// {band, gamma_fs: {g795,g780,gd,gs}, coeff_sq: {a21,a31,a42,a43},
//  lambdas: {p,c,d,s}, alpha_c_override?, alpha_s_override?, gamma_deph?}
struct SchemeOverrides {
  AtomicScheme scheme;
  std::optional<double> alpha_c_override;
  std::optional<double> alpha_s_override;
  double gamma_deph = 0.0;
};
SchemeOverrides scheme_from_json(const json& j);

// ---- CSV with deterministic number formatting ("%.12g", '\n' endings)
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(const std::string& v);
  void end_row();

  const std::string& str() const { return buf_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::string buf_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

std::string format_double(double v);

// ---- run record: reproducibility sidecar for every CLI artifact
struct RunRecord {
  std::string command;
  json config;                        // resolved configuration, seed included
  std::vector<std::string> outputs;   // artifact paths
  json result_summary;
  double wall_seconds = 0.0;

  json to_json() const;  // adds artifact version and a timestamp
  void write(const std::filesystem::path& path) const;
};

}  // namespace qfc
