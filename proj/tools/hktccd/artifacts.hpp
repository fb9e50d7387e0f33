#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkt/ccd.hpp"
#include "hkt/sensitivity.hpp"
#include "hkt/simulate.hpp"

namespace hkt::cli {

/// Writes every artifact of one command into a directory, each stamped with
/// the configuration hash. Files are written whole through a temporary and
/// renamed into place.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::string hash);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& hash() const { return hash_; }
  const std::vector<std::string>& written() const { return written_; }

  /// CSV with a leading "# config_hash=..." line; numbers at 17 significant digits.
  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows);
  /// JSON object; "config_hash" is added.
  void json(const std::string& name, nlohmann::json body);
  /// Columns t,v,omega,tsr,u,Q,P.
  void trajectory(const std::string& name, const Trajectory& tr, const FlowProfile& flow, double radius);
  /// Free-form text; the first line carries the hash as a JSON record.
  void jsonl(const std::string& name, const std::string& lines);

 private:
  void write(const std::string& name, const std::string& content);

  std::filesystem::path dir_;
  std::string hash_;
  std::vector<std::string> written_;
};

/// %.17g
std::string num(double v);

nlohmann::json geometry_json(const BladeGeometry& g);
std::string geometry_csv_text(const BladeGeometry& g);
nlohmann::json cp_curve_json(const CpCurve& cp);
nlohmann::json ccd_result_json(const CcdResult& r, const std::string& trajectory_file);
/// Trajectory CSV rows (data lines only) parsed back as text fields.
std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path);
nlohmann::json sensitivity_json(const SensitivityReport& r);

}  // namespace hkt::cli
