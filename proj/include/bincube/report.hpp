#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace bincube {

using Json = nlohmann::json;

enum class Verdict { pass, violation, usage_error, numerical_failure };

std::string_view to_string(Verdict v);

/// Exit code convention shared by every suite: 0 pass, 1 violation,
/// 2 usage error, 3 numerical failure.
int exit_code(Verdict v);

/// One verified claim. `value` is compared against `bound` by the producer;
/// the record only keeps what was compared and how it came out.
struct Check {
  std::string id;
  std::string anchor;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Report {
  std::string suite;
  Json inputs = Json::object();
  Json values = Json::object();
  std::vector<Check> checks;
  /// Set when the suite aborted; overrides the per-check outcome.
  Verdict forced = Verdict::pass;

  Check& add(Check c);
  bool passed() const;
  Verdict verdict() const;
  /// First failing check, or nullptr.
  const Check* first_failure() const;
  /// Appends every check of `other`, prefixing ids with `prefix`.
  void merge(const Report& other, std::string_view prefix);
};

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

inline constexpr std::string_view kReportSchema = "bincube.report/1";

/// Keys are sorted (nlohmann::json objects are ordered maps) and checks are
/// sorted by id, so equal reports serialize to equal bytes.
Json to_json(const Report& r);
Json to_json(const Check& c);

/// Default tolerances for every suite, overridable by name.
class ToleranceTable {
 public:
  static ToleranceTable defaults();

  double get(std::string_view key) const;
  /// Throws UsageError for unknown keys or non-positive values.
  void set(std::string_view key, double value);
  /// Parses "key=value".
  void set_from_string(std::string_view assignment);
  Json to_json() const;

 private:
  std::map<std::string, double, std::less<>> values_;
};

}  // namespace bincube
