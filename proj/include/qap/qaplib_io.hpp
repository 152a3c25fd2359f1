#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qap/core.hpp"

namespace qap {

/// Contents of a QAPLIB .sln file; perm is converted to 0-based on read.
struct SolutionFile {
  std::size_t n = 0;
  Cost objective = 0;
  Assignment perm;
};

/// Which reading of the .sln permutation reproduced the header objective.
enum class SolutionReading {
  kFacilityToLocation,  // perm[i] = location of facility i
  kLocationToFacility,  // perm[j] = facility at location j
};

struct SolutionCheck {
  Cost cost = 0;           // evaluated cost under `reading`
  bool matches = false;    // cost == header objective
  SolutionReading reading = SolutionReading::kFacilityToLocation;
  Assignment assignment;   // facility -> location, as evaluated
  std::string warning;     // empty when matches
};

/// QAPLIB .dat: n, then A (flow) and B (distance), n*n integers each, row-major.
QapInstance parse_instance(std::istream& in, std::string name);
QapInstance parse_instance(std::string_view text, std::string name);

/// QAPLIB .sln: "n objective" followed by n 1-based location indices.
SolutionFile parse_solution(std::istream& in);
SolutionFile parse_solution(std::string_view text);

/// Evaluates the solution's permutation, facility -> location first. When that
/// does not reproduce the header objective the inverse reading is tried; if
/// neither does, the direct reading's cost is returned with matches == false.
/// Throws UsageError when sol.n differs from the instance size.
SolutionCheck validate_solution(const QapInstance& inst, const SolutionFile& sol);

/// Renders an instance in .dat layout; parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const QapInstance& inst);

/// Lowercased filename stem, e.g. "data/Esc128.dat" -> "esc128".
std::string instance_name_from_path(const std::filesystem::path& path);

QapInstance load_instance(const std::filesystem::path& path);
SolutionFile load_solution(const std::filesystem::path& path);

/// $QAP_DATA_DIR when set, otherwise the data/qaplib directory of the source tree.
std::filesystem::path default_data_dir();

std::filesystem::path instance_path(const std::filesystem::path& data_dir, std::string_view name);
std::filesystem::path solution_path(const std::filesystem::path& data_dir, std::string_view name);

/// Best known objective value of a bundled QAPLIB instance, keyed by lowercase name.
struct BestKnownEntry {
  std::string_view name;
  std::size_t size;
  Cost best_known;
};

/// The twelve benchmark instances, alphabetical.
std::span<const BestKnownEntry> best_known_registry();

/// Case-insensitive lookup. Throws LookupError listing known names.
Cost best_known(std::string_view name);
std::optional<Cost> find_best_known(std::string_view name);

std::string to_lower(std::string_view s);

}  // namespace qap
