#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace billiards {

enum class OutputFormat { Text, Json, Csv, Svg };

/// Zero or empty fields select the subcommand's default.
struct RunConfig {
  std::string subcommand;
  std::vector<int> degrees;
  int order = 0;
  int depth = 0;
  int samples = 0;
  int iters = 0;
  double tol = 0.0;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Text;
  /// Output path; stdout when empty.
  std::string out;

  /// Curve file for orbit, billiard-sim and ivrii-scan.
  std::string curve;
  /// Interior seed point of a real table given by --curve.
  std::optional<std::array<double, 2>> interior;
  /// circle, ellipse or quartic, used when no curve file is given.
  std::string table;
  std::optional<std::array<double, 2>> ellipse;
  std::vector<double> eps;
  std::array<int, 2> grid{0, 0};
  double min_exponent = 0.8;
  std::size_t per_level = 0;
  /// midpoint-scan seeds on |u| = 1.
  bool boundary = false;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitError = 3;

const std::vector<std::string>& subcommands();

/// Runs one subcommand. Writes the artifact to cfg.out atomically (or to out)
/// and failed checks or errors to err. Returns kExitPass when every check
/// passes, kExitFail when one fails, kExitUsage for an invalid configuration
/// and kExitError for IO or numerical errors.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and calls run.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace billiards
