#ifndef CPIPE_EXPORT_HPP
#define CPIPE_EXPORT_HPP

#include "cpipe/pipeline.hpp"
#include "cpipe/polydisc.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace cpipe {

/// Polar product grid: s3 = (j + 1/2) / n_disc, s2 = 2 pi k / (4 n_disc).
struct DiscGrid {
  std::size_t n_disc = 16;
  std::size_t radial() const { return n_disc; }
  std::size_t angular() const { return 4 * n_disc; }
  double s3(std::size_t j) const;
  double s2(std::size_t k) const;
};

using ScalarRow = std::array<double, 3>;  // z2, z3, value
using VectorRow = std::array<double, 4>;  // z2, z3, v2, v3

/// Rows ordered radius-major; throws ConfigError for n_disc < 8.
std::vector<ScalarRow> sample_field(const DiscPoly<double>& f, const DiscGrid& grid);
std::vector<VectorRow> sample_field(const VecPoly<double>& f, const DiscGrid& grid);

/// printf "%.17g".
std::string format_number(double x);

void write_samples_csv(const std::filesystem::path& path, const std::vector<ScalarRow>& rows);
void write_samples_csv(const std::filesystem::path& path, const std::vector<VectorRow>& rows);

/// Coefficient files "component,m,n,coefficient" that reproduce the polynomial exactly.
void write_poly_csv(const std::filesystem::path& path, const DiscPoly<double>& f);
void write_poly_csv(const std::filesystem::path& path, const VecPoly<double>& f);
DiscPoly<double> read_scalar_poly_csv(const std::filesystem::path& path);
VecPoly<double> read_vector_poly_csv(const std::filesystem::path& path);

void write_heatmap_svg(const std::filesystem::path& path, const std::vector<ScalarRow>& rows, const DiscGrid& grid,
                       const std::string& title);
void write_quiver_svg(const std::filesystem::path& path, const std::vector<VectorRow>& rows, const DiscGrid& grid,
                      const std::string& title);

/// Lowest expansion order at which a named field exists; -1 if unknown.
int field_min_order(const std::string& name);
bool field_is_vector(const std::string& name);
DiscPoly<double> scalar_field(const ExpansionFields<double>& f, const std::string& name);
VecPoly<double> vector_field(const ExpansionFields<double>& f, const std::string& name);

struct ExportSummary {
  std::vector<std::filesystem::path> files;
  double roundtrip_max_diff = 0.0;  // re-ingested coefficient files vs. in-memory fields
};

/// Per-station samples, coefficient files and plots for the selected fields.
ExportSummary export_fields(const RunResult& run, const std::filesystem::path& dir);
/// line.csv, history.csv and meta.txt.
void export_line_data(const RunResult& run, const std::filesystem::path& dir, ExportSummary& summary);
/// Key-value verification report.
void write_report(const std::filesystem::path& path, const RunResult& run, const VerificationSummary* verification,
                  const ExportSummary& exported);

}  // namespace cpipe

#endif
