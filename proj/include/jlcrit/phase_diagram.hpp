#pragma once

// Parameter-space scans over one or two of (s, l, p) and their CSV / JSON
// renderings. Cells are evaluated concurrently and stored row-major, so the
// output never depends on scheduling.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jlcrit/criticality.hpp"

namespace jlcrit {

enum class Axis { s, ell, p };

std::string_view axis_name(Axis a) noexcept;  ///< "s", "l", "p"
Axis parse_axis(std::string_view name);

struct AxisRange {
    Axis axis = Axis::p;
    double min = 0.0;
    double max = 0.0;
    int count = 2;

    [[nodiscard]] double at(int i) const;
};

/// Parses `name=min:max:count`, e.g. `p=1.5:20:200`.
AxisRange parse_grid(const std::string& text);

enum class Format { csv, json };
Format parse_format(std::string_view name);

struct ScanSpec {
    int N = 3;
    std::vector<AxisRange> axes;  ///< first axis varies slowest
    double s = 0.5;
    double ell = 0.0;
    std::optional<double> p;
    double tol = kDefaultTol;
    int samples = 4096;
    Format format = Format::csv;

    /// One or two distinct axes; count >= 2 with min < max (or a single
    /// degenerate point, count = 1 with min = max); p fixed when not an axis.
    void validate() const;
    [[nodiscard]] bool has_axis(Axis a) const;
};

struct Cell {
    std::vector<double> coords;  ///< one per axis, in axis order
    std::optional<Label> label;  ///< nullopt: out of domain
    std::optional<double> margin;
};

/// Threshold overlay, e.g. {"kind": "crossing", "s": 0.1, "p": 5.2}.
struct Annotation {
    std::string kind;
    std::vector<std::pair<std::string, double>> values;
};

struct PhaseDiagram {
    ScanSpec spec;
    std::vector<Cell> cells;
    std::vector<Annotation> annotations;
};

/// threads = 0 picks hardware_concurrency.
PhaseDiagram run_scan(const ScanSpec& spec, unsigned threads = 0);

/// Columns: axis names, then fixed parameters among s, l, p, then label, margin.
std::string to_csv(const PhaseDiagram& pd);
std::string to_json(const PhaseDiagram& pd);
PhaseDiagram phase_diagram_from_json(const std::string& text);
std::string render(const PhaseDiagram& pd);  ///< in spec.format

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace jlcrit
