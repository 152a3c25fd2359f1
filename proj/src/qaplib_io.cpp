#include "qap/qaplib_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "qap/error.hpp"

#ifndef QAP_DEFAULT_DATA_DIR
#define QAP_DEFAULT_DATA_DIR "data/qaplib"
#endif

namespace qap {

namespace {

// Whitespace-separated token reader that remembers the 1-based index of the
// last token it produced. Commas count as separators (some .sln files use them).
class TokenReader {
 public:
  TokenReader(std::istream& in, bool comma_separates) : in_(in), commas_(comma_separates) {}

  bool next(std::string& token) {
    token.clear();
    char c = 0;
    while (in_.get(c)) {
      if (is_separator(c)) {
        if (!token.empty()) {
          break;
        }
        continue;
      }
      token.push_back(c);
    }
    if (token.empty()) {
      return false;
    }
    ++index_;
    return true;
  }

  std::size_t index() const noexcept { return index_; }

 private:
  bool is_separator(char c) const {
    return std::isspace(static_cast<unsigned char>(c)) != 0 || (commas_ && c == ',');
  }

  std::istream& in_;
  bool commas_;
  std::size_t index_ = 0;
};

std::int64_t to_integer(const std::string& token, std::size_t index) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(fmt::format("token {} ('{}') is not an integer", index, token), index);
  }
  return value;
}

constexpr std::int64_t kMaxInstanceSize = 1 << 15;

constexpr std::array<BestKnownEntry, 12> kRegistry{{
    {"bur26h", 26, 7098658},
    {"chr12c", 12, 11156},
    {"chr15a", 15, 9896},
    {"esc128", 128, 64},
    {"esc16i", 16, 14},
    {"esc32h", 32, 438},
    {"esc64a", 64, 128},
    {"had12", 12, 1652},
    {"had14", 14, 2724},
    {"had20", 20, 6922},
    {"kra30b", 30, 91420},
    {"ste36a", 36, 9526},
}};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError(fmt::format("cannot open '{}'", path.string()));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

QapInstance parse_instance(std::istream& in, std::string name) {
  TokenReader reader(in, false);
  std::string token;
  if (!reader.next(token)) {
    throw TruncatedInputError("empty instance: expected the size n", 0);
  }
  const std::int64_t n = to_integer(token, reader.index());
  if (n < 1 || n > kMaxInstanceSize) {
    throw ParseError(fmt::format("instance size {} out of range [1, {}]", n, kMaxInstanceSize), 1);
  }
  const auto order = static_cast<std::size_t>(n);
  const std::size_t cells = order * order;
  std::vector<std::int64_t> flow;
  std::vector<std::int64_t> distance;
  flow.reserve(cells);
  distance.reserve(cells);
  for (std::size_t k = 0; k < 2 * cells; ++k) {
    if (!reader.next(token)) {
      throw TruncatedInputError(
          fmt::format("expected {} integers (n = {} plus two {}x{} matrices), found {}",
                      1 + 2 * cells, n, n, n, reader.index()),
          reader.index());
    }
    (k < cells ? flow : distance).push_back(to_integer(token, reader.index()));
  }
  if (reader.next(token)) {
    throw ParseError(fmt::format("unexpected trailing token {} ('{}')", reader.index(), token),
                     reader.index());
  }
  return QapInstance(std::move(name), SquareMatrix(order, std::move(flow)),
                     SquareMatrix(order, std::move(distance)));
}

QapInstance parse_instance(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, std::move(name));
}

SolutionFile parse_solution(std::istream& in) {
  TokenReader reader(in, true);
  std::string token;
  if (!reader.next(token)) {
    throw TruncatedInputError("empty solution file: expected 'n objective'", 0);
  }
  const std::int64_t n = to_integer(token, reader.index());
  if (n < 1 || n > kMaxInstanceSize) {
    throw ParseError(fmt::format("solution size {} out of range [1, {}]", n, kMaxInstanceSize), 1);
  }
  if (!reader.next(token)) {
    throw TruncatedInputError("solution header lacks the objective value", reader.index());
  }
  const Cost objective = to_integer(token, reader.index());

  std::vector<std::size_t> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    if (!reader.next(token)) {
      throw TruncatedInputError(
          fmt::format("expected {} permutation entries, found {}", n, k), reader.index());
    }
    const std::int64_t loc = to_integer(token, reader.index());
    if (loc < 1 || loc > n) {
      throw ValidationError(
          fmt::format("permutation entry {} is outside 1..{} (token {})", loc, n, reader.index()));
    }
    perm.push_back(static_cast<std::size_t>(loc - 1));
  }
  if (reader.next(token)) {
    throw ParseError(fmt::format("unexpected trailing token {} ('{}')", reader.index(), token),
                     reader.index());
  }
  if (!is_permutation(perm)) {
    throw ValidationError("solution permutation repeats a location");
  }
  return SolutionFile{static_cast<std::size_t>(n), objective, Assignment(std::move(perm))};
}

SolutionFile parse_solution(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_solution(in);
}

SolutionCheck validate_solution(const QapInstance& inst, const SolutionFile& sol) {
  if (sol.n != inst.size() || sol.perm.size() != inst.size()) {
    throw UsageError(fmt::format("solution has size {}, instance '{}' has size {}", sol.n,
                                 inst.name(), inst.size()));
  }
  const Cost direct = evaluate(inst, sol.perm);
  if (direct == sol.objective) {
    return {direct, true, SolutionReading::kFacilityToLocation, sol.perm, {}};
  }
  Assignment inverse = sol.perm.inverse();
  const Cost inverted = evaluate(inst, inverse);
  if (inverted == sol.objective) {
    return {inverted, true, SolutionReading::kLocationToFacility, std::move(inverse), {}};
  }
  return {direct, false, SolutionReading::kFacilityToLocation, sol.perm,
          fmt::format("header objective {} does not match evaluated cost {} (inverse reading: {})",
                      sol.objective, direct, inverted)};
}

std::string serialize_instance(const QapInstance& inst) {
  const std::size_t n = inst.size();
  fmt::memory_buffer out;
  fmt::format_to(std::back_inserter(out), "{}\n", n);
  for (const SquareMatrix* m : {&inst.flow(), &inst.distance()}) {
    out.push_back('\n');
    for (std::size_t r = 0; r < n; ++r) {
      fmt::format_to(std::back_inserter(out), "{}\n", fmt::join(m->row(r), " "));
    }
  }
  return fmt::to_string(out);
}

std::string instance_name_from_path(const std::filesystem::path& path) {
  return to_lower(path.stem().string());
}

QapInstance load_instance(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(text, instance_name_from_path(path));
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()), e.token_index());
  }
}

SolutionFile load_solution(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_solution(text);
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()), e.token_index());
  }
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("QAP_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return QAP_DEFAULT_DATA_DIR;
}

std::filesystem::path instance_path(const std::filesystem::path& data_dir, std::string_view name) {
  return data_dir / (to_lower(name) + ".dat");
}

std::filesystem::path solution_path(const std::filesystem::path& data_dir, std::string_view name) {
  return data_dir / (to_lower(name) + ".sln");
}

std::span<const BestKnownEntry> best_known_registry() { return kRegistry; }

std::optional<Cost> find_best_known(std::string_view name) {
  const std::string key = to_lower(name);
  for (const BestKnownEntry& e : kRegistry) {
    if (e.name == key) {
      return e.best_known;
    }
  }
  return std::nullopt;
}

Cost best_known(std::string_view name) {
  if (auto v = find_best_known(name)) {
    return *v;
  }
  std::vector<std::string_view> names;
  for (const BestKnownEntry& e : kRegistry) {
    names.push_back(e.name);
  }
  throw LookupError(fmt::format("no best known value for '{}'; known instances: {}", name,
                                fmt::join(names, ", ")));
}

}  // namespace qap
