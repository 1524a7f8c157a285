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

#ifndef JSCCALLOC_PSNR_MODEL_HPP_
#define JSCCALLOC_PSNR_MODEL_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace jscc {

// Tabulated reconstruction-quality surface PSNR = f(cr, snr), bilinear
// between nodes. Invariants enforced at construction:
//   - grids strictly increasing, all values finite,
//   - each cr row nondecreasing in snr,
//   - each snr column nondecreasing in cr.
// SNR queries outside the grid clamp to the boundary; CR queries outside the
// grid are a domain error.
class PsnrModel {
 public:
  PsnrModel(std::vector<double> cr_grid, std::vector<double> snr_grid_db,
            std::vector<std::vector<double>> psnr_table_db);

  double evaluate(double cr, double snr_db) const;

  struct MinSnr {
    bool feasible = false;
    double snr_db = 0.0;
    int iterations = 0;  // bisection steps taken
  };

  // Smallest snr (within tol_db) with evaluate(cr, snr) >= eta_db, by
  // bisection over the snr grid range. Infeasible when even the grid
  // maximum falls short.
  MinSnr min_snr_for_psnr(double cr, double eta_db, double tol_db = 0.01) const;

  const std::vector<double>& cr_grid() const { return cr_grid_; }
  const std::vector<double>& snr_grid_db() const { return snr_grid_db_; }
  const std::vector<std::vector<double>>& psnr_table_db() const { return table_; }
  double snr_min_db() const { return snr_grid_db_.front(); }
  double snr_max_db() const { return snr_grid_db_.back(); }

  // Synthetic saturating-curve surface over the default CR set and
  // 0..20 dB. Placeholder for a measured table; every pipeline entry point
  // accepts a user-supplied one.
  static PsnrModel synthetic_default();

 private:
  std::vector<double> cr_grid_;
  std::vector<double> snr_grid_db_;
  std::vector<std::vector<double>> table_;  // [cr][snr]
};

// Plain-text table with header `cr,snr_db,psnr_db`, one row per node; rows
// must form a complete (cr x snr) grid. Invariant violations are rejected
// with the offending cell named.
PsnrModel load_model(std::istream& in);
PsnrModel load_model_file(const std::string& path);
void save_model(const PsnrModel& model, std::ostream& out);
void save_model_file(const PsnrModel& model, const std::string& path);

}  // namespace jscc

#endif  // JSCCALLOC_PSNR_MODEL_HPP_
