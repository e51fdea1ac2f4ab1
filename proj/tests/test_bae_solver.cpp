#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tqlab/bae_solver.hpp"
#include "tqlab/q_reconstructor.hpp"
#include "test_support.hpp"

using namespace tqlab;

namespace {

const std::vector<std::vector<Cplx>> kTable1{
    {{-2.97259, 1.15909}, {-2.51751, -1.42184}, {-0.50990, 0.26274}},
    {{-2.97259, -1.15909}, {-2.51751, 1.42184}, {-0.50990, -0.26274}},
    {{-2.88462, 0.00000}, {-1.55769, -2.56650}, {-1.55769, 2.56650}},
};
const Cplx kTablePhi(0.0, -0.69315);

bool sets_match(const std::vector<Cplx>& a, const std::vector<Cplx>& b, double tol) {
  return root_set_distance(a, b) < tol;
}

std::vector<std::vector<Cplx>> oracle_seeds(const ChainSpec& spec) {
  std::vector<std::vector<Cplx>> seeds;
  for (const auto& rec : diagonalize(spec)) {
    try {
      const Reconstruction r = spec.is_homogeneous()
                                   ? reconstruct_q_homogeneous(rec.lambda, spec)
                                   : reconstruct_q(rec.lambda, spec);
      seeds.push_back(r.q.roots());
    } catch (const std::exception&) {
    }
  }
  return seeds;
}

}  // namespace

TEST_CASE("newton: rounded table start converges to the printed values") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  // rows 1 and 2 are simple zeros of the residual map; the exact solutions
  // sit up to 1.3e-5 from the 5-decimal printed values, so the comparison
  // runs at the table precision 1e-4
  for (size_t k = 0; k < 2; ++k) {
    std::vector<Cplx> rounded;
    for (const Cplx& r : kTable1[k])
      rounded.emplace_back(std::round(r.real() * 100) / 100, std::round(r.imag() * 100) / 100);
    const NewtonResult res = newton_solve(spec, rounded);
    REQUIRE(res.status == NewtonStatus::kConverged);
    CHECK(sets_match(res.roots.mu, kTable1[k], 1e-4));
    CHECK(res.roots.defect < 1e-10);
  }
  // row 3 is a multiple zero: the defect converges but the roots carry the
  // valley scatter, while the associated Lambda is pinned far more tightly
  {
    std::vector<Cplx> rounded;
    for (const Cplx& r : kTable1[2])
      rounded.emplace_back(std::round(r.real() * 100) / 100, std::round(r.imag() * 100) / 100);
    const NewtonResult res = newton_solve(spec, rounded);
    REQUIRE(res.status == NewtonStatus::kConverged);
    CHECK(res.roots.defect < 1e-10);
    CHECK(sets_match(res.roots.mu, kTable1[2], 1e-2));
    const ComplexPoly lam = lambda_poly_from_tq(spec, ComplexPoly::from_roots(res.roots.mu));
    CHECK(std::abs(energy_from_lambda(lam, 3) - Cplx(1.5)) < 1e-6);
  }
}

TEST_CASE("newton: a converged start stays put") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  const NewtonResult first = newton_solve(spec, kTable1[0]);
  REQUIRE(first.status == NewtonStatus::kConverged);
  const NewtonResult again = newton_solve(spec, first.roots.mu);
  CHECK(again.status == NewtonStatus::kConverged);
  CHECK(again.roots.newton_iterations <= 1);
  CHECK(sets_match(again.roots.mu, first.roots.mu, 1e-9));
}

TEST_CASE("newton: start violating selection rules is rejected") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  const std::vector<Cplx> bad{Cplx(0.0), Cplx(1.0, 1.0), Cplx(-2.0, 0.3)};  // mu_1 = theta
  CHECK_THROWS_AS(newton_solve(spec, bad), std::invalid_argument);
}

TEST_CASE("property: random starts either converge to a known solution or abort") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> re(-4.0, 1.0), im(-4.0, 4.0);
  int converged = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Cplx> start(3);
    for (auto& s : start) s = Cplx(re(rng), im(rng));
    if (selection_rule_violation(spec, start, 1e-6)) continue;
    const NewtonResult res = newton_solve(spec, start);
    if (res.status != NewtonStatus::kConverged) {
      CHECK_FALSE(res.roots.converged);
      continue;
    }
    ++converged;
    CHECK(res.roots.defect < 1e-10);
    // independent re-evaluation
    CHECK(bae_defect(spec, res.roots.mu) < 1e-10);
    // known rows, with the wider tolerance covering the multiple-zero valley
    // around row 3; exact degenerate zeros on the exclusion set also converge
    // and are filtered later by the functional-relation check in enumerate
    const bool known = sets_match(res.roots.mu, kTable1[0], 1e-4) ||
                       sets_match(res.roots.mu, kTable1[1], 1e-4) ||
                       sets_match(res.roots.mu, kTable1[2], 1e-2);
    if (!known) {
      ComplexPoly lam;
      bool valid = true;
      try {
        lam = lambda_poly_from_tq(spec, ComplexPoly::from_roots(res.roots.mu));
        valid = verify_functional_relations(lam, spec).passes(1e-7);
      } catch (const std::exception&) {
        valid = false;
      }
      CHECK_FALSE(valid);
    }
  }
  CHECK(converged > 20);  // the basin structure is not pathological
}

TEST_CASE("jacobian matches central finite differences of the raw map") {
  std::mt19937_64 rng(71);
  ChainSpec spec;
  spec.num_sites = 3;
  spec.theta = test::random_theta(rng, 3);
  spec.phi = Cplx(0.4, -0.3);
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Cplx> mu(3);
    for (auto& m : mu) m = test::random_cplx(rng, 1.5);
    if (selection_rule_violation(spec, mu, 1e-3)) continue;
    const Mat jac = bae_jacobian(spec, mu);
    for (int k = 0; k < 3; ++k) {
      std::vector<Cplx> p = mu, q = mu;
      p[static_cast<size_t>(k)] += h;
      q[static_cast<size_t>(k)] -= h;
      const Vec fd = (bae_residual_raw(spec, p) - bae_residual_raw(spec, q)) / (2.0 * h);
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(jac(j, k) - fd(j)) < 1e-5 * (1.0 + std::abs(fd(j))));
    }
  }
}

TEST_CASE("enumerate: N=3 table configuration yields exactly the three printed rows") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  EnumerationOptions opts;
  opts.budget = 2000;
  const auto seeds = oracle_seeds(spec);
  const auto sols = enumerate_solutions(spec, opts, seeds);
  REQUIRE(sols.size() == 3);
  for (const auto& row : kTable1) {
    bool found = false;
    for (const auto& s : sols) found = found || sets_match(s.mu, row, 1e-4);
    CHECK(found);
  }
}

TEST_CASE("dedup is permutation-sound") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  EnumerationOptions opts;
  opts.budget = 50;
  const NewtonResult res = newton_solve(spec, kTable1[0]);
  REQUIRE(res.status == NewtonStatus::kConverged);
  std::vector<std::vector<Cplx>> permuted;
  std::vector<Cplx> p = res.roots.mu;
  std::mt19937_64 rng(73);
  for (int k = 0; k < 8; ++k) {
    std::shuffle(p.begin(), p.end(), rng);
    permuted.push_back(p);
  }
  const auto base = enumerate_solutions(spec, opts);
  const auto with_seeds = enumerate_solutions(spec, opts, permuted);
  // the permuted seeds all collapse onto one solution
  int found_row0 = 0;
  for (const auto& s : with_seeds)
    if (sets_match(s.mu, kTable1[0], 1e-4)) ++found_row0;
  CHECK(found_row0 == 1);
  CHECK(with_seeds.size() <= base.size() + 1);
}

TEST_CASE("serial and parallel multistart produce identical solution lists") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  EnumerationOptions serial;
  serial.budget = 300;
  serial.parallel = false;
  EnumerationOptions parallel;
  parallel.budget = 300;
  parallel.parallel = true;
  const auto a = enumerate_solutions(spec, serial);
  const auto b = enumerate_solutions(spec, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t k = 0; k < a.size(); ++k) {
    REQUIRE(a[k].mu.size() == b[k].mu.size());
    for (size_t j = 0; j < a[k].mu.size(); ++j) CHECK(a[k].mu[j] == b[k].mu[j]);
    CHECK(a[k].defect == b[k].defect);
  }
}

TEST_CASE("classify: perfect matching for the N=3 table, empty input flags all records") {
  const ChainSpec spec = ChainSpec::homogeneous(3, kTablePhi);
  const auto records = diagonalize(spec);
  EnumerationOptions opts;
  opts.budget = 500;
  const auto sols = enumerate_solutions(spec, opts, oracle_seeds(spec));
  REQUIRE(sols.size() == 3);
  const Matching m = classify(sols, records, spec);
  CHECK(m.matched.size() == 3);
  CHECK(m.unmatched_solutions.empty());
  CHECK(m.unmatched_records.empty());
  std::vector<double> energies;
  for (const auto& e : m.matched) {
    REQUIRE(e.has_energy);
    energies.push_back(e.energy.real());
  }
  std::sort(energies.begin(), energies.end());
  CHECK(std::abs(energies[0] + 1.5) < 1e-6);
  CHECK(std::abs(energies[1] + 1.5) < 1e-6);
  CHECK(std::abs(energies[2] - 1.5) < 1e-6);

  const Matching empty = classify({}, records, spec);
  CHECK(empty.matched.empty());
  CHECK(empty.unmatched_records.size() == records.size());
}

TEST_CASE("enumerate: N=2 solution count equals the oracle record count") {
  ChainSpec spec = ChainSpec::homogeneous(2, Cplx(0.3, 0.0));
  EnumerationOptions opts;
  opts.budget = 800;
  const auto records = diagonalize(spec);
  const auto sols = enumerate_solutions(spec, opts, oracle_seeds(spec));
  CHECK(sols.size() == records.size());
  const Matching m = classify(sols, records, spec);
  CHECK(m.unmatched_records.empty());
  CHECK(m.unmatched_solutions.empty());
}
