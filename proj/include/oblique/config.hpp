#pragma once

#include "oblique/quadrature.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace oblique {

enum class ModelSource { degree1, degree4, external };
enum class ReportKind { error_table, field, radius_sweep };

/// Mesh selector: `ico`, `uv:NxM` (N longitudes, M co-latitudes) or `tri:<path>`.
struct MeshSpec {
  enum class Kind { ico, uv, tri };
  Kind kind = Kind::ico;
  int n_phi = 0;
  int n_theta = 0;
  std::string path;

  static MeshSpec parse(const std::string& text);
  std::string str() const;
};

struct RunConfig {
  ModelSource model = ModelSource::degree1;
  std::string h_file;  // external model: CSV of phi,theta,h_re,h_im
  int h_lmax = 4;      // degree of the harmonic fit applied to external samples
  double epsilon = 1e-4;
  double radius = 1.0;
  MeshSpec mesh{};
  int order = 3;
  QuadratureConfig quadrature{};
  int basis_lmax = 2;
  std::vector<ReportKind> outputs{ReportKind::error_table, ReportKind::field};
  std::filesystem::path out_dir = "out";
  std::vector<double> sweep_radii{1.0, 10.0, 100.0};
  int sweep_probe = 5; // 1-based node id

  /// Throws ConfigError on an invalid combination.
  void validate() const;
};

/// Applies one `key = value` from `section`; throws ConfigError on unknown
/// keys or unparsable values.
void apply_setting(RunConfig& cfg, const std::string& section, const std::string& key, const std::string& value);

/// INI-style text: `[section]` headers, `key = value` lines, `#`/`;` comments.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::filesystem::path& path);

/// Round-trippable text form of every setting.
std::string format_config(const RunConfig& cfg);

std::string to_string(ModelSource m);
std::string to_string(ReportKind k);
std::string to_string(SurfaceScheme s);

} // namespace oblique
