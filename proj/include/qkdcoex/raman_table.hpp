#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qkdcoex/errors.hpp"

namespace qkdcoex {

/// Normalized spontaneous Raman scattering cross-sections rho(lambda_c,
/// lambda_q) in 1/(nm km), loaded from a CSV file. Rows are grouped by
/// quantum wavelength; within a group the cross-section is interpolated
/// piecewise-linearly in the classical wavelength. Queries outside a group's
/// classical range, or with no matching quantum band, are errors — the table
/// never extrapolates.
class RamanTable {
 public:
  struct Row {
    double classical_wavelength_nm;
    double quantum_wavelength_nm;
    double rho_per_nm_per_km;
  };

  /// Widest plausible distance between a queried quantum wavelength and the
  /// band representative stored in the table (C-band is ~35 nm wide).
  static constexpr double kQuantumBandToleranceNm = 25.0;

  static RamanTable from_rows(std::vector<Row> rows, const std::string& origin = "<memory>") {
    RamanTable table;
    table.origin_ = origin;
    for (const Row& row : rows) {
      if (!(row.classical_wavelength_nm > 0.0) || !(row.quantum_wavelength_nm > 0.0)) {
        throw DataError(origin + ": wavelengths must be positive");
      }
      if (!(row.rho_per_nm_per_km >= 0.0)) {
        throw DataError(origin + ": rho must be non-negative");
      }
      Group* group = table.find_group_exact(row.quantum_wavelength_nm);
      if (group == nullptr) {
        table.groups_.push_back({row.quantum_wavelength_nm, {}});
        group = &table.groups_.back();
      }
      group->points.emplace_back(row.classical_wavelength_nm, row.rho_per_nm_per_km);
    }
    if (table.groups_.empty()) {
      throw DataError(origin + ": table holds no rows");
    }
    for (Group& group : table.groups_) {
      std::sort(group.points.begin(), group.points.end());
      for (std::size_t n = 1; n < group.points.size(); ++n) {
        if (group.points[n].first == group.points[n - 1].first) {
          throw DataError(origin + ": duplicate classical wavelength " +
                          std::to_string(group.points[n].first) + " nm for quantum " +
                          std::to_string(group.quantum_wavelength_nm) + " nm");
        }
      }
    }
    return table;
  }

  static RamanTable parse(std::istream& in, const std::string& origin) {
    std::vector<Row> rows;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') {
        continue;
      }
      if (!header_seen) {
        if (strip(line) !=
            "classical_wavelength_nm,quantum_wavelength_nm,rho_per_nm_per_km") {
          throw DataError(origin + ":" + std::to_string(line_no) +
                          ": expected header row "
                          "'classical_wavelength_nm,quantum_wavelength_nm,rho_per_nm_per_km'");
        }
        header_seen = true;
        continue;
      }
      rows.push_back(parse_row(line, origin, line_no));
    }
    if (!header_seen) {
      throw DataError(origin + ": missing header row");
    }
    return from_rows(std::move(rows), origin);
  }

  static RamanTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
      throw DataError("cannot open Raman table '" + path.string() + "'");
    }
    return parse(in, path.string());
  }

  /// Cross-section for a (classical, quantum) wavelength pair in 1/(nm km).
  double rho(double classical_nm, double quantum_nm) const {
    const Group* best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Group& group : groups_) {
      const double dist = std::abs(group.quantum_wavelength_nm - quantum_nm);
      if (dist < best_dist) {
        best_dist = dist;
        best = &group;
      }
    }
    if (best == nullptr || best_dist > kQuantumBandToleranceNm) {
      throw DataError(origin_ + ": no quantum band covering the pair (classical " +
                      std::to_string(classical_nm) + " nm, quantum " +
                      std::to_string(quantum_nm) + " nm)");
    }
    const auto& pts = best->points;
    if (classical_nm < pts.front().first || classical_nm > pts.back().first) {
      throw DataError(origin_ + ": classical wavelength out of tabulated range for the pair "
                      "(classical " + std::to_string(classical_nm) + " nm, quantum " +
                      std::to_string(quantum_nm) + " nm); table covers [" +
                      std::to_string(pts.front().first) + ", " +
                      std::to_string(pts.back().first) + "] nm");
    }
    auto upper = std::lower_bound(pts.begin(), pts.end(), classical_nm,
                                  [](const auto& p, double x) { return p.first < x; });
    if (upper->first == classical_nm) {
      return upper->second;
    }
    const auto lower = upper - 1;
    const double t = (classical_nm - lower->first) / (upper->first - lower->first);
    return lower->second + t * (upper->second - lower->second);
  }

  const std::string& origin() const { return origin_; }

 private:
  struct Group {
    double quantum_wavelength_nm;
    std::vector<std::pair<double, double>> points;  // (classical nm, rho)
  };

  Group* find_group_exact(double quantum_nm) {
    for (Group& group : groups_) {
      if (group.quantum_wavelength_nm == quantum_nm) {
        return &group;
      }
    }
    return nullptr;
  }

  static std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  }

  static Row parse_row(const std::string& line, const std::string& origin,
                       std::size_t line_no) {
    std::istringstream ss(line);
    std::string field;
    double values[3];
    for (int n = 0; n < 3; ++n) {
      if (!std::getline(ss, field, ',')) {
        throw DataError(origin + ":" + std::to_string(line_no) + ": expected 3 fields");
      }
      try {
        std::size_t used = 0;
        values[n] = std::stod(strip(field), &used);
        if (used != strip(field).size()) {
          throw std::invalid_argument(field);
        }
      } catch (const std::exception&) {
        throw DataError(origin + ":" + std::to_string(line_no) + ": bad number '" +
                        strip(field) + "'");
      }
    }
    if (std::getline(ss, field, ',')) {
      throw DataError(origin + ":" + std::to_string(line_no) + ": expected 3 fields");
    }
    return {values[0], values[1], values[2]};
  }

  std::vector<Group> groups_;
  std::string origin_;
};

}  // namespace qkdcoex
