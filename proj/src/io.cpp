#include "surfhps/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace surfhps {

namespace {

// Cyclic boundary ring of the degree-m simplex block starting at local offset
// `off`: vertices at off+0..2, then m-1 interior nodes per directed edge.
std::vector<int> simplex_ring(int off, int m) {
    std::vector<int> ring;
    for (int v = 0; v < 3; ++v) {
        ring.push_back(off + v);
        for (int k = 0; k < m - 1; ++k) ring.push_back(off + 3 + v * (m - 1) + k);
    }
    return ring;
}

// Stitch the annulus between two concentric closed rings (outer/inner, both
// counter-clockwise) with a greedy shortest-diagonal triangle strip.
void stitch_rings(const MatX& pts, const std::vector<int>& outer, const std::vector<int>& inner,
                  std::vector<std::vector<int>>& cells) {
    const int p = static_cast<int>(outer.size());
    const int q = static_cast<int>(inner.size());
    if (q == 1) {
        for (int i = 0; i < p; ++i) cells.push_back({outer[i], outer[(i + 1) % p], inner[0]});
        return;
    }
    int i = 0, j = 0, adv_o = 0, adv_i = 0;
    const double inf = std::numeric_limits<double>::infinity();
    while (adv_o < p || adv_i < q) {
        const double d_outer =
            adv_o < p ? (pts.row(outer[(i + 1) % p]) - pts.row(inner[j])).norm() : inf;
        const double d_inner =
            adv_i < q ? (pts.row(outer[i]) - pts.row(inner[(j + 1) % q])).norm() : inf;
        if (d_outer <= d_inner) {
            cells.push_back({outer[i], outer[(i + 1) % p], inner[j]});
            i = (i + 1) % p;
            ++adv_o;
        } else {
            cells.push_back({outer[i], inner[(j + 1) % q], inner[j]});
            j = (j + 1) % q;
            ++adv_i;
        }
    }
}

}  // namespace

std::vector<std::vector<int>> element_subcells(const ReferenceBasis& basis) {
    std::vector<std::vector<int>> cells;
    if (basis.kind == ElemKind::Quad) {
        const int np = basis.n + 1;
        auto idx = [np](int i, int j) { return i + np * j; };
        for (int j = 0; j < np - 1; ++j)
            for (int i = 0; i < np - 1; ++i)
                cells.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)});
        return cells;
    }
    // Simplex: concentric rings following the recursive node construction.
    std::vector<std::vector<int>> rings;
    int off = 0, m = basis.n;
    while (m >= 1) {
        rings.push_back(simplex_ring(off, m));
        off += 3 * m;
        m -= 3;
    }
    if (m == 0) rings.push_back({off});  // centroid
    for (std::size_t k = 0; k + 1 < rings.size(); ++k)
        stitch_rings(basis.nodes, rings[k], rings[k + 1], cells);
    const std::vector<int>& last = rings.back();
    if (rings.size() == 1 || last.size() >= 3) {
        // Innermost ring encloses no further nodes: fan it.
        for (std::size_t i = 1; i + 1 < last.size(); ++i)
            cells.push_back({last[0], last[int(i)], last[int(i) + 1]});
    }
    return cells;
}

void write_vtk_surface(const std::string& path, const GlobalNodeTable& table,
                       const ReferenceBasis& basis, const std::vector<VtkField>& fields,
                       const MatX* coords_override) {
    const MatX& coords = coords_override ? *coords_override : table.coords;
    require(coords.rows() == table.num_global && coords.cols() == 3, ErrorCode::InvalidArgument,
            "write_vtk_surface: coordinate matrix must be num_global x 3");
    for (const VtkField& f : fields)
        require(f.values.size() == table.num_global, ErrorCode::InvalidArgument,
                "write_vtk_surface: field '" + f.name + "' has wrong length");

    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << "# vtk DataFile Version 3.0\n";
    out << "surfhps surface field\n";
    out << "ASCII\n";
    out << "DATASET POLYDATA\n";
    out << "POINTS " << table.num_global << " double\n";
    for (int i = 0; i < table.num_global; ++i)
        out << format_number(coords(i, 0)) << ' ' << format_number(coords(i, 1)) << ' '
            << format_number(coords(i, 2)) << '\n';

    const auto cells = element_subcells(basis);
    const std::size_t num_elems = table.local_to_global.size();
    std::size_t total_polys = cells.size() * num_elems;
    std::size_t total_ints = 0;
    for (const auto& c : cells) total_ints += c.size() + 1;
    total_ints *= num_elems;
    out << "POLYGONS " << total_polys << ' ' << total_ints << '\n';
    for (const auto& l2g : table.local_to_global)
        for (const auto& cell : cells) {
            out << cell.size();
            for (int local : cell) out << ' ' << l2g[local];
            out << '\n';
        }

    if (!fields.empty()) {
        out << "POINT_DATA " << table.num_global << '\n';
        for (const VtkField& f : fields) {
            out << "SCALARS " << f.name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (int i = 0; i < table.num_global; ++i) out << format_number(f.values[i]) << '\n';
        }
    }
    require(out.good(), ErrorCode::Io, "write failed for '" + path + "'");
}

std::string format_number(double v) {
    std::array<char, 40> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    require(ec == std::errc(), ErrorCode::Io, "number formatting failed");
    return std::string(buf.data(), ptr);
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_record(std::ofstream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << "\r\n";
}

}  // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::Io, "cannot open '" + path + "' for writing");
    write_record(out, header);
    for (const auto& row : rows) {
        require(row.size() == header.size(), ErrorCode::InvalidArgument,
                "CSV row width does not match the header");
        write_record(out, row);
    }
    require(out.good(), ErrorCode::Io, "write failed for '" + path + "'");
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::Io, "cannot open config file '" + path + "'");
    KeyValueConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, ErrorCode::InvalidArgument,
                "config '" + path + "' line " + std::to_string(lineno) + ": expected key = value");
        cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void KeyValueConfig::apply(const std::string& key_equals_value) {
    const auto eq = key_equals_value.find('=');
    require(eq != std::string::npos, ErrorCode::InvalidArgument,
            "override '" + key_equals_value + "' must have the form key=value");
    set(trim(key_equals_value.substr(0, eq)), trim(key_equals_value.substr(eq + 1)));
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    require(!key.empty(), ErrorCode::InvalidArgument, "empty config key");
    values_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        require(used == it->second.size(), ErrorCode::InvalidArgument, "");
        return v;
    } catch (...) {
        fail(ErrorCode::InvalidArgument,
             "config key '" + key + "': '" + it->second + "' is not a number");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second, &used);
        require(used == it->second.size(), ErrorCode::InvalidArgument, "");
        return v;
    } catch (...) {
        fail(ErrorCode::InvalidArgument,
             "config key '" + key + "': '" + it->second + "' is not an integer");
    }
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(it->second, &used);
        require(used == it->second.size(), ErrorCode::InvalidArgument, "");
        return v;
    } catch (...) {
        fail(ErrorCode::InvalidArgument,
             "config key '" + key + "': '" + it->second + "' is not an unsigned integer");
    }
}

std::string library_version() { return "surfhps 1.0.0"; }

void write_metadata(const std::string& dir, const std::map<std::string, std::string>& config,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
    nlohmann::ordered_json j;
    j["library"] = library_version();
    j["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                 "." + std::to_string(EIGEN_MINOR_VERSION);
#if defined(__clang__)
    j["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    j["compiler"] = std::string("gcc ") + std::to_string(__GNUC__) + "." +
                    std::to_string(__GNUC_MINOR__) + "." + std::to_string(__GNUC_PATCHLEVEL__);
#else
    j["compiler"] = "unknown";
#endif
    j["node_ordering"] =
        "mesh vertices, then edge nodes along each canonical edge, then element interiors";
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    for (const auto& [k, v] : extra) j[k] = v;

    const std::string path = dir + "/metadata.json";
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    require(out.good(), ErrorCode::Io, "write failed for '" + path + "'");
}

}  // namespace surfhps
