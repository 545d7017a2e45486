#include "qfc/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "qfc/errors.hpp"

namespace qfc {

json state_to_json(const DensityMatrix& rho) {
  json entries = json::array();
  const int d = rho.dim();
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      entries.push_back({rho(m, n).real(), rho(m, n).imag()});
  return json{{"dim", d}, {"entries", entries}};
}

DensityMatrix state_from_json(const json& j) {
  for (const auto& [key, _] : j.items()) {
    if (key != "dim" && key != "entries")
      throw ConfigError("state json: unknown key '" + key + "'");
  }
  if (!j.contains("dim") || !j.contains("entries"))
    throw ConfigError("state json: need keys 'dim' and 'entries'");
  const int d = j.at("dim").get<int>();
  const auto& entries = j.at("entries");
  if (d < 1 || static_cast<int>(entries.size()) != d * d)
    throw ConfigError("state json: entries must hold dim^2 [re, im] pairs");
  Eigen::MatrixXcd m(d, d);
  int k = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c, ++k)
      m(r, c) = std::complex<double>(entries[k][0].get<double>(), entries[k][1].get<double>());
  return DensityMatrix(std::move(m));
}

SchemeOverrides scheme_from_json(const json& j) {
  static const char* known[] = {"band",    "gamma_fs",        "coeff_sq",
                                "lambdas", "alpha_c_override", "alpha_s_override",
                                "gamma_deph"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("scheme json: unknown key '" + key + "'");
  }
  SchemeOverrides ov;
  ov.scheme = build_scheme(parse_band(j.at("band").get<std::string>()));
  if (j.contains("gamma_fs")) {
    const auto& g = j.at("gamma_fs");
    ov.scheme.gamma_fs_795 = g.at("g795").get<double>();
    ov.scheme.gamma_fs_780 = g.at("g780").get<double>();
    ov.scheme.gamma_fs_d = g.at("gd").get<double>();
    ov.scheme.gamma_fs_s = g.at("gs").get<double>();
  }
  if (j.contains("coeff_sq")) {
    const auto& a = j.at("coeff_sq");
    ov.scheme.a21_sq = a.at("a21").get<double>();
    ov.scheme.a31_sq = a.at("a31").get<double>();
    ov.scheme.a42_sq = a.at("a42").get<double>();
    ov.scheme.a43_sq = a.at("a43").get<double>();
  }
  if (j.contains("lambdas")) {
    const auto& l = j.at("lambdas");
    ov.scheme.lambda_p = l.at("p").get<double>();
    ov.scheme.lambda_c = l.at("c").get<double>();
    ov.scheme.lambda_d = l.at("d").get<double>();
    ov.scheme.lambda_s = l.at("s").get<double>();
  }
  ov.scheme.table_version += "+overrides";
  if (j.contains("alpha_c_override")) ov.alpha_c_override = j.at("alpha_c_override").get<double>();
  if (j.contains("alpha_s_override")) ov.alpha_s_override = j.at("alpha_s_override").get<double>();
  if (j.contains("gamma_deph")) ov.gamma_deph = j.at("gamma_deph").get<double>();
  return ov;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // collapse negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header[i];
  }
  buf_ += '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (in_row_) buf_ += ',';
  buf_ += v;
  ++in_row_;
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CsvWriter: row has " + std::to_string(in_row_) + " of " +
                           std::to_string(columns_) + " cells");
  buf_ += '\n';
  in_row_ = 0;
}

void CsvWriter::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << buf_;
}

json RunRecord::to_json() const {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return json{
      {"artifact_version", QFC_VERSION},
      {"command", command},
      {"config", config},
      {"outputs", outputs},
      {"result_summary", result_summary},
      {"wall_seconds", wall_seconds},
      {"timestamp_unix_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
  };
}

void RunRecord::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace qfc
