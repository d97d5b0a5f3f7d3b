#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polycc/geometry.hpp"

namespace polycc::cli {

// Process exit status of every subcommand.
enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kInfeasible = 3,
  kInvalidGeometry = 4,
  kNoConvergence = 5,
  kCloseApproach = 6,
};

// Job/config document shared by verify, simulate and masses --write-config:
//
//   { "n": int, "masses": [..], "center_mass": x, "omega_squared": x,
//     "positions": [[x, y], ..] }
//
// "masses" are the polygon (or free) bodies. "center_mass" adds one more body;
// without "positions" that body sits at the origin and the others on the
// regular n-gon. With "positions", one point per body in the same order.
struct ConfigDocument {
  int n = 0;
  std::vector<double> masses;
  std::optional<double> center_mass;
  std::optional<double> omega_squared;
  std::optional<std::vector<PlanarPoint>> positions;

  // Throws DomainError on schema violations.
  static ConfigDocument from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  // Builds and validates the configuration (DomainError,
  // CoincidentBodiesError).
  Configuration configuration() const;
};

// Reads and parses a document from disk. Throws DomainError when the file is
// missing or not valid JSON.
ConfigDocument load_config(const std::string& path);

// "a..b" or "a" -> inclusive range. Throws DomainError on malformed text or
// bounds outside [lo, hi].
std::pair<int, int> parse_range(std::string_view text, int lo, int hi);

// Entry point. Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polycc::cli
