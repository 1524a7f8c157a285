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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "jsccalloc/errors.hpp"
#include "jsccalloc/psnr_model.hpp"
#include "jsccalloc/rng.hpp"
#include "support/oracles.hpp"

using namespace jscc;

TEST_CASE("grid nodes evaluate to the stored table values") {
  PsnrModel m = PsnrModel::synthetic_default();
  for (std::size_t i = 0; i < m.cr_grid().size(); ++i) {
    for (std::size_t j = 0; j < m.snr_grid_db().size(); ++j) {
      CHECK(m.evaluate(m.cr_grid()[i], m.snr_grid_db()[j]) ==
            doctest::Approx(m.psnr_table_db()[i][j]).epsilon(1e-14));
    }
  }
}

TEST_CASE("snr outside the grid clamps to the boundary") {
  PsnrModel m = PsnrModel::synthetic_default();
  double cr = m.cr_grid()[3];
  CHECK(m.evaluate(cr, -100.0) == m.evaluate(cr, m.snr_min_db()));
  CHECK(m.evaluate(cr, 100.0) == m.evaluate(cr, m.snr_max_db()));
}

TEST_CASE("cr outside the grid is a domain error") {
  PsnrModel m = PsnrModel::synthetic_default();
  CHECK_THROWS_AS(m.evaluate(1e-4, 5.0), std::domain_error);
  CHECK_THROWS_AS(m.evaluate(0.9, 5.0), std::domain_error);
}

TEST_CASE("snr midpoint on one cr row is the mean of the node values") {
  PsnrModel m = PsnrModel::synthetic_default();
  double cr = m.cr_grid()[2];
  double lo = m.snr_grid_db()[4], hi = m.snr_grid_db()[5];
  double expected = 0.5 * (m.evaluate(cr, lo) + m.evaluate(cr, hi));
  CHECK(m.evaluate(cr, 0.5 * (lo + hi)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("interpolation preserves both monotonicity directions") {
  PsnrModel m = PsnrModel::synthetic_default();
  rng::Stream stream(99);
  for (int trial = 0; trial < 2000; ++trial) {
    double cr1 = stream.uniform(m.cr_grid().front(), m.cr_grid().back());
    double cr2 = stream.uniform(m.cr_grid().front(), m.cr_grid().back());
    if (cr1 > cr2) std::swap(cr1, cr2);
    double snr1 = stream.uniform(m.snr_min_db() - 2.0, m.snr_max_db() + 2.0);
    double snr2 = stream.uniform(m.snr_min_db() - 2.0, m.snr_max_db() + 2.0);
    if (snr1 > snr2) std::swap(snr1, snr2);
    CHECK(m.evaluate(cr1, snr1) <= m.evaluate(cr1, snr2) + 1e-12);
    CHECK(m.evaluate(cr1, snr1) <= m.evaluate(cr2, snr1) + 1e-12);
  }
}

TEST_CASE("bisection agrees with a dense grid scan") {
  PsnrModel m = PsnrModel::synthetic_default();
  rng::Stream stream(7);
  const double tol = 0.01;
  for (int trial = 0; trial < 300; ++trial) {
    double cr = m.cr_grid()[stream.uniform_index(m.cr_grid().size())];
    double eta = stream.uniform(13.0, 31.0);
    PsnrModel::MinSnr got = m.min_snr_for_psnr(cr, eta, tol);
    auto scanned = testing::scan_min_snr(m, cr, eta);
    if (!scanned) {
      CHECK_FALSE(got.feasible);
      continue;
    }
    REQUIRE(got.feasible);
    CHECK(std::abs(got.snr_db - *scanned) <= tol + 1e-3);
    // The returned point satisfies the target; 2*tol below it must not
    // (when we are away from the grid floor).
    CHECK(m.evaluate(cr, got.snr_db) >= eta);
    if (got.snr_db > m.snr_min_db() + 2 * tol) {
      CHECK(m.evaluate(cr, got.snr_db - 2 * tol) < eta);
    }
  }
}

TEST_CASE("bisection respects its iteration bound") {
  PsnrModel m = PsnrModel::synthetic_default();
  double interval = m.snr_max_db() - m.snr_min_db();
  double tol = 0.01;
  int bound = static_cast<int>(std::ceil(std::log2(interval / tol))) + 1;
  rng::Stream stream(21);
  for (int trial = 0; trial < 200; ++trial) {
    double cr = m.cr_grid()[stream.uniform_index(m.cr_grid().size())];
    PsnrModel::MinSnr r = m.min_snr_for_psnr(cr, stream.uniform(15.0, 30.0), tol);
    CHECK(r.iterations <= bound);
  }
}

TEST_CASE("already-satisfied targets return the grid minimum") {
  PsnrModel m = PsnrModel::synthetic_default();
  double cr = m.cr_grid().back();
  double floor_psnr = m.evaluate(cr, m.snr_min_db());
  PsnrModel::MinSnr r = m.min_snr_for_psnr(cr, floor_psnr - 1.0, 0.01);
  REQUIRE(r.feasible);
  CHECK(r.snr_db == m.snr_min_db());
}

TEST_CASE("unreachable targets are infeasible") {
  PsnrModel m = PsnrModel::synthetic_default();
  double cr = m.cr_grid().front();
  double ceiling = m.evaluate(cr, m.snr_max_db());
  CHECK_FALSE(m.min_snr_for_psnr(cr, ceiling + 0.5, 0.01).feasible);
}

TEST_CASE("model table save/load round trip") {
  PsnrModel m = PsnrModel::synthetic_default();
  std::stringstream buffer;
  save_model(m, buffer);
  PsnrModel loaded = load_model(buffer);
  CHECK(loaded.cr_grid().size() == m.cr_grid().size());
  for (std::size_t i = 0; i < m.cr_grid().size(); ++i) {
    for (std::size_t j = 0; j < m.snr_grid_db().size(); ++j) {
      CHECK(loaded.psnr_table_db()[i][j] ==
            doctest::Approx(m.psnr_table_db()[i][j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("a decreasing snr row entry is rejected with the cell named") {
  std::stringstream in(
      "cr,snr_db,psnr_db\n"
      "0.1,0,20\n0.1,1,19\n"
      "0.2,0,21\n0.2,1,22\n");
  CHECK_THROWS_WITH_AS(load_model(in), doctest::Contains("nondecreasing in snr"), ModelError);
}

TEST_CASE("a cr-monotonicity violation is rejected") {
  std::stringstream in(
      "cr,snr_db,psnr_db\n"
      "0.1,0,20\n0.1,1,21\n"
      "0.2,0,19\n0.2,1,22\n");
  CHECK_THROWS_WITH_AS(load_model(in), doctest::Contains("nondecreasing in cr"), ModelError);
}

TEST_CASE("incomplete grids are rejected") {
  std::stringstream in(
      "cr,snr_db,psnr_db\n"
      "0.1,0,20\n0.1,1,21\n"
      "0.2,0,21\n");
  CHECK_THROWS_WITH_AS(load_model(in), doctest::Contains("incomplete grid"), ParseError);
}
