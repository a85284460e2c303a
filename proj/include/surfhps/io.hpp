#pragma once

// Artifact I/O: legacy ASCII VTK (POLYDATA) for surface fields, RFC-4180 CSV,
// flat key=value run configs with command-line overrides, and JSON metadata.
// All numeric output is locale-independent; metadata carries no timestamps so
// identical runs produce bit-identical artifacts.

#include <map>
#include <string>
#include <vector>

#include "surfhps/core.hpp"
#include "surfhps/global_index.hpp"
#include "surfhps/reference_basis.hpp"

namespace surfhps {

// ---------------------------------------------------------------------------
// VTK

struct VtkField {
    std::string name;
    VecX values;  // one value per global node
};

// Writes the charted surface as POLYDATA: points are the solver's global
// nodes in global ordering (optionally overridden by `coords` for evolving
// snapshots), polygons are per-element sub-cells connecting neighboring
// collocation nodes, and each field becomes a POINT_DATA scalar array.
void write_vtk_surface(const std::string& path, const GlobalNodeTable& table,
                       const ReferenceBasis& basis, const std::vector<VtkField>& fields,
                       const MatX* coords_override = nullptr);

// Per-element sub-cell connectivity in local node indices (triangles for
// simplex elements, quads for tensor elements); exposed for tests.
std::vector<std::vector<int>> element_subcells(const ReferenceBasis& basis);

// ---------------------------------------------------------------------------
// CSV

// Shortest round-trip decimal representation, locale independent.
std::string format_number(double v);

// RFC-4180: fields containing commas, quotes, or newlines are quoted and
// inner quotes doubled; records end with "\r\n".
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// ---------------------------------------------------------------------------
// Key=value config

// Flat text config: one `key = value` per line, '#' starts a comment, blank
// lines ignored. Later assignments win, so command-line overrides are just
// late apply() calls.
class KeyValueConfig {
  public:
    static KeyValueConfig from_file(const std::string& path);

    void apply(const std::string& key_equals_value);  // "key=value"
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

// ---------------------------------------------------------------------------
// Metadata

// Writes `metadata.json` into `dir`: full config map, seed, and version
// strings (library, Eigen, compiler). Deterministic byte-for-byte.
void write_metadata(const std::string& dir, const std::map<std::string, std::string>& config,
                    const std::vector<std::pair<std::string, std::string>>& extra = {});

std::string library_version();

}  // namespace surfhps
