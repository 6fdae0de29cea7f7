#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bincube/report.hpp"

namespace bincube {

enum class SuiteId { regions, twopoint, fourpoint, certify, energy, hy, young, entropy, triadic, figures };
enum class OutputFormat { json, csv };
enum class FigureId { fig1, fig2, fig3, fig5 };

std::string_view to_string(SuiteId s);
SuiteId parse_suite(std::string_view name);
std::string_view to_string(FigureId f);
FigureId parse_figure(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Seed from BINCUBE_SEED if set and valid, otherwise kDefaultSeed.
std::uint64_t default_seed();

/// Empty lists and zero sizes mean "use the suite default".
struct SuiteConfig {
  SuiteId suite = SuiteId::regions;
  std::vector<double> q_list;
  std::vector<double> p_list;
  std::vector<double> kappa_list;
  int dim = 0;
  /// Grid resolution for the grid suites, instance count for the sweeps.
  int grid = 0;
  std::uint64_t seed = kDefaultSeed;
  ToleranceTable tol = ToleranceTable::defaults();
  /// Figures only.
  std::vector<FigureId> figures;
  std::filesystem::path out_dir = ".";
};

/// Throws UsageError for parameters the suite cannot use.
void validate(const SuiteConfig& config);

/// Runs one suite. Usage errors and numerical failures are caught and turned
/// into a report with `forced` set; the verdict maps to the exit code.
Report run_suite(const SuiteConfig& config);

/// Writes one CSV per figure into out_dir and returns the paths.
std::vector<std::filesystem::path> export_figures(std::span<const FigureId> which, int resolution,
                                                  const std::filesystem::path& out_dir);

/// id,passed,value,bound,tolerance,anchor,detail
std::string checks_csv(const Report& r);

}  // namespace bincube
