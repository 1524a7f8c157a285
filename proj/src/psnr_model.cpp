// Copyright 2026 The jsccalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jsccalloc/psnr_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "jsccalloc/errors.hpp"

namespace jscc {

namespace {

// Index of the grid cell containing x: largest i with grid[i] <= x,
// clamped to [0, n-2].
std::size_t cell_index(const std::vector<double>& grid, double x) {
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i > 0) --i;
  return std::min(i, grid.size() - 2);
}

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.size() < 2) throw ModelError(std::string(name) + " needs at least 2 nodes");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ModelError(std::string(name) + " has a non-finite node");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw ModelError(std::string(name) + " must be strictly increasing (node " +
                       std::to_string(i) + ")");
    }
  }
}

}  // namespace

PsnrModel::PsnrModel(std::vector<double> cr_grid, std::vector<double> snr_grid_db,
                     std::vector<std::vector<double>> psnr_table_db)
    : cr_grid_(std::move(cr_grid)),
      snr_grid_db_(std::move(snr_grid_db)),
      table_(std::move(psnr_table_db)) {
  check_grid(cr_grid_, "cr_grid");
  check_grid(snr_grid_db_, "snr_grid_db");
  if (table_.size() != cr_grid_.size()) throw ModelError("table must have one row per cr node");
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i].size() != snr_grid_db_.size()) {
      throw ModelError("table row " + std::to_string(i) + " must have one entry per snr node");
    }
    for (std::size_t j = 0; j < table_[i].size(); ++j) {
      if (!std::isfinite(table_[i][j])) {
        throw ModelError("table cell (" + std::to_string(i) + "," + std::to_string(j) +
                         ") is not finite");
      }
      if (j > 0 && table_[i][j] < table_[i][j - 1]) {
        throw ModelError("psnr must be nondecreasing in snr at cell (cr=" +
                         std::to_string(cr_grid_[i]) + ", snr=" +
                         std::to_string(snr_grid_db_[j]) + ")");
      }
      if (i > 0 && table_[i][j] < table_[i - 1][j]) {
        throw ModelError("psnr must be nondecreasing in cr at cell (cr=" +
                         std::to_string(cr_grid_[i]) + ", snr=" +
                         std::to_string(snr_grid_db_[j]) + ")");
      }
    }
  }
}

double PsnrModel::evaluate(double cr, double snr_db) const {
  if (!(cr >= cr_grid_.front() && cr <= cr_grid_.back())) {
    throw std::domain_error("compression ratio " + std::to_string(cr) +
                            " outside model grid [" + std::to_string(cr_grid_.front()) + ", " +
                            std::to_string(cr_grid_.back()) + "]");
  }
  double snr = std::clamp(snr_db, snr_grid_db_.front(), snr_grid_db_.back());

  std::size_t i = cell_index(cr_grid_, cr);
  std::size_t j = cell_index(snr_grid_db_, snr);
  double tx = (cr - cr_grid_[i]) / (cr_grid_[i + 1] - cr_grid_[i]);
  double ty = (snr - snr_grid_db_[j]) / (snr_grid_db_[j + 1] - snr_grid_db_[j]);
  double a = table_[i][j] * (1.0 - ty) + table_[i][j + 1] * ty;
  double b = table_[i + 1][j] * (1.0 - ty) + table_[i + 1][j + 1] * ty;
  return a * (1.0 - tx) + b * tx;
}

PsnrModel::MinSnr PsnrModel::min_snr_for_psnr(double cr, double eta_db, double tol_db) const {
  if (tol_db <= 0.0) throw std::invalid_argument("tol_db must be > 0");
  double lo = snr_grid_db_.front();
  double hi = snr_grid_db_.back();
  if (evaluate(cr, lo) >= eta_db) return {true, lo, 0};
  if (evaluate(cr, hi) < eta_db) return {false, 0.0, 0};
  // Invariant: f(lo) < eta <= f(hi).
  int iterations = 0;
  while (hi - lo > tol_db) {
    double mid = 0.5 * (lo + hi);
    if (evaluate(cr, mid) >= eta_db) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++iterations;
  }
  return {true, hi, iterations};
}

PsnrModel PsnrModel::synthetic_default() {
  // Saturating curves psnr = pmax - (pmax - pmin) * exp(-snr / tau), with
  // pmax/pmin increasing in cr. SYNTHETIC shape, not a measured codec.
  std::vector<double> cr_grid = {1.0 / 48.0, 1.0 / 24.0, 1.0 / 16.0, 1.0 / 12.0,
                                 5.0 / 48.0, 1.0 / 8.0,  7.0 / 48.0, 1.0 / 6.0};
  std::vector<double> snr_grid;
  for (int s = 0; s <= 20; ++s) snr_grid.push_back(static_cast<double>(s));
  const double tau = 6.0;
  std::vector<std::vector<double>> table(cr_grid.size(),
                                         std::vector<double>(snr_grid.size()));
  for (std::size_t i = 0; i < cr_grid.size(); ++i) {
    double u = cr_grid[i] * 6.0;  // normalized to the largest default cr
    double pmax = 30.5 * std::pow(u, 0.19);
    double pmin = 12.5 + 6.5 * std::sqrt(u);
    for (std::size_t j = 0; j < snr_grid.size(); ++j) {
      table[i][j] = pmax - (pmax - pmin) * std::exp(-snr_grid[j] / tau);
    }
  }
  return PsnrModel(std::move(cr_grid), std::move(snr_grid), std::move(table));
}

PsnrModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty model table");
  // Tolerate an optional UTF-8 BOM and trailing CR.
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "cr,snr_db,psnr_db") {
    throw ParseError("model table header must be 'cr,snr_db,psnr_db', got '" + line + "'");
  }

  std::map<double, std::map<double, double>> cells;  // cr -> snr -> psnr
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string f0, f1, f2;
    if (!std::getline(row, f0, ',') || !std::getline(row, f1, ',') || !std::getline(row, f2)) {
      throw ParseError("model table line " + std::to_string(lineno) + " needs 3 fields");
    }
    try {
      double cr = std::stod(f0);
      double snr = std::stod(f1);
      double psnr = std::stod(f2);
      if (!cells[cr].emplace(snr, psnr).second) {
        throw ParseError("duplicate node at line " + std::to_string(lineno));
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("model table line " + std::to_string(lineno) + " has a non-numeric field");
    }
  }
  if (cells.empty()) throw ParseError("model table has no data rows");

  std::vector<double> cr_grid;
  for (const auto& [cr, _] : cells) cr_grid.push_back(cr);
  std::vector<double> snr_grid;
  for (const auto& [snr, _] : cells.begin()->second) snr_grid.push_back(snr);

  std::vector<std::vector<double>> table;
  for (const auto& [cr, row] : cells) {
    if (row.size() != snr_grid.size()) {
      throw ParseError("incomplete grid: cr=" + std::to_string(cr) + " has " +
                       std::to_string(row.size()) + " nodes, expected " +
                       std::to_string(snr_grid.size()));
    }
    std::vector<double> values;
    std::size_t j = 0;
    for (const auto& [snr, psnr] : row) {
      if (snr != snr_grid[j]) {
        throw ParseError("incomplete grid: cr=" + std::to_string(cr) +
                         " is missing snr=" + std::to_string(snr_grid[j]));
      }
      values.push_back(psnr);
      ++j;
    }
    table.push_back(std::move(values));
  }
  return PsnrModel(std::move(cr_grid), std::move(snr_grid), std::move(table));
}

PsnrModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  return load_model(in);
}

void save_model(const PsnrModel& model, std::ostream& out) {
  out << "cr,snr_db,psnr_db\n";
  char buf[128];
  for (std::size_t i = 0; i < model.cr_grid().size(); ++i) {
    for (std::size_t j = 0; j < model.snr_grid_db().size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%.15g\n", model.cr_grid()[i],
                    model.snr_grid_db()[j], model.psnr_table_db()[i][j]);
      out << buf;
    }
  }
}

void save_model_file(const PsnrModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  save_model(model, out);
}

}  // namespace jscc
