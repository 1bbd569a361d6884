#include <cmath>
#include <cstdlib>

#include "casimir/lifshitz.hpp"
#include "doctest.h"

using namespace casimir;

namespace {

const QuadratureConfig kQuad;

PlateConfig halfspace_plate(DielectricModel m) {
  PlateConfig p;
  p.stack.substrate = std::move(m);
  return p;
}

PlateConfig film_plate(const char* film_preset, double thickness) {
  PlateConfig p;
  p.stack.substrate = preset_model("classical-au");
  p.stack.layers.push_back({thickness, preset_model(film_preset)});
  return p;
}

const PlateConfig kPerfect = halfspace_plate(PerfectConductorModel{});
const PlateConfig kVacuum = halfspace_plate(VacuumModel{});
const PlateConfig kClassical = halfspace_plate(preset_model("classical-au"));
const PlateConfig kPlasma =
    halfspace_plate(PlasmaModel{units::ev_to_rad_s(9.0)});

}  // namespace

TEST_CASE("ideal pressure magnitude") {
  CHECK(perfect_conductor_pressure(1e-6) ==
        doctest::Approx(1.3001257724477536e-3).epsilon(1e-12));
  CHECK(perfect_conductor_pressure(0.5e-6) ==
        doctest::Approx(16.0 * perfect_conductor_pressure(1e-6))
            .epsilon(1e-12));
  CHECK(perfect_conductor_pressure(2e-6) ==
        doctest::Approx(perfect_conductor_pressure(1e-6) / 16.0)
            .epsilon(1e-12));
  CHECK_THROWS_AS(perfect_conductor_pressure(0.0), DomainError);
  CHECK_THROWS_AS(perfect_conductor_pressure(-1.0), DomainError);
}

TEST_CASE("perfect mirrors normalize to 1") {
  for (double L : {0.1e-6, 0.5e-6, 1e-6, 5e-6}) {
    const EtaResult r = reduction_factor(kPerfect, kPerfect, L, kQuad);
    CHECK(std::fabs(r.eta - 1.0) < 1e-4);
    CHECK(r.eta == r.eta_s + r.eta_p);
    // The two polarizations are identical integrals for ideal mirrors.
    CHECK(r.eta_s == doctest::Approx(r.eta_p).epsilon(1e-9));
  }
}

TEST_CASE("vacuum mirrors give zero") {
  const EtaResult r = reduction_factor(kVacuum, kVacuum, 1e-6, kQuad);
  CHECK(r.eta == 0.0);
  CHECK(r.eta_s == 0.0);
  CHECK(r.eta_p == 0.0);
}

TEST_CASE("golden spot values") {
  // Frozen from an independent nested adaptive quadrature over the same
  // kernel (double-checked against a 2000x2000 trapezoid grid).
  const EtaResult gold = reduction_factor(kClassical, kClassical, 1e-6, kQuad);
  CHECK(gold.eta == doctest::Approx(0.8834335668720515).epsilon(1e-5));

  const PlateConfig annealed_film = film_plate("annealed-au", 300e-10);
  const EtaResult film =
      reduction_factor(annealed_film, annealed_film, 0.5e-6, kQuad);
  CHECK(film.eta == doctest::Approx(0.7849551760088483).epsilon(1e-5));

  const EtaResult plasma = reduction_factor(kPlasma, kPlasma, 0.2e-6, kQuad);
  CHECK(plasma.eta == doctest::Approx(0.617551501579685).epsilon(1e-5));
}

TEST_CASE("classical curve against frozen grid") {
  const double L_um[] = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0};
  const double eta_gold[] = {0.438777, 0.611028, 0.796305,
                             0.883434, 0.934156, 0.968061};
  for (int i = 0; i < 6; ++i) {
    const EtaResult r =
        reduction_factor(kClassical, kClassical, L_um[i] * 1e-6, kQuad);
    CHECK(r.eta == doctest::Approx(eta_gold[i]).epsilon(1e-4));
  }
}

TEST_CASE("eta rises toward 1 with separation") {
  double prev = 0.0;
  for (double L : {0.05e-6, 0.2e-6, 0.8e-6, 3.2e-6, 12.8e-6}) {
    const EtaResult r = reduction_factor(kClassical, kClassical, L, kQuad);
    CHECK(r.eta > prev);
    CHECK(r.eta < 1.0);
    prev = r.eta;
  }
  const double plasma_1 = reduction_factor(kPlasma, kPlasma, 1e-6, kQuad).eta;
  const double plasma_5 = reduction_factor(kPlasma, kPlasma, 5e-6, kQuad).eta;
  CHECK(plasma_5 > plasma_1);
  CHECK(plasma_5 < 1.0);
}

TEST_CASE("stronger damping lowers eta") {
  const PlateConfig annealed = film_plate("annealed-au", 300e-10);
  const PlateConfig nonannealed = film_plate("nonannealed-au", 300e-10);
  for (double L : {0.1e-6, 0.5e-6, 2e-6}) {
    const double c = reduction_factor(kClassical, kClassical, L, kQuad).eta;
    const double a = reduction_factor(annealed, annealed, L, kQuad).eta;
    const double n = reduction_factor(nonannealed, nonannealed, L, kQuad).eta;
    CHECK(c >= a);
    CHECK(a >= n);
    CHECK(n > 0.0);
  }
}

TEST_CASE("bounds and error estimate") {
  for (const PlateConfig* plate : {&kClassical, &kPlasma}) {
    for (double L : {0.1e-6, 1e-6}) {
      const EtaResult r = reduction_factor(*plate, *plate, L, kQuad);
      CHECK(r.eta >= 0.0);
      CHECK(r.eta <= 1.0 + r.error_estimate);
      CHECK(r.error_estimate > 0.0);
      CHECK(r.error_estimate < 1e-4);
      CHECK(r.evaluations > 0);
      CHECK(r.eta == r.eta_s + r.eta_p);
    }
  }
}

TEST_CASE("plate order does not matter") {
  const PlateConfig film = film_plate("nonannealed-au", 300e-10);
  const EtaResult ab = reduction_factor(kClassical, film, 0.7e-6, kQuad);
  const EtaResult ba = reduction_factor(film, kClassical, 0.7e-6, kQuad);
  CHECK(ab.eta == doctest::Approx(ba.eta).epsilon(1e-12));
  CHECK(ab.eta_s == doctest::Approx(ba.eta_s).epsilon(1e-12));
}

TEST_CASE("force pressure") {
  CHECK(force_pressure(kPerfect, kPerfect, 1e-6, kQuad) ==
        doctest::Approx(1.3001257724477536e-3).epsilon(2e-4));
  CHECK(force_pressure(kVacuum, kVacuum, 1e-6, kQuad) == 0.0);
  const double eta_c = reduction_factor(kClassical, kClassical, 1e-6, kQuad).eta;
  CHECK(force_pressure(kClassical, kClassical, 1e-6, kQuad) ==
        doctest::Approx(eta_c * perfect_conductor_pressure(1e-6))
            .epsilon(1e-12));
}

TEST_CASE("sweep grids") {
  SweepSpec spec;
  spec.L_min = 1e-7;
  spec.L_max = 1e-6;
  spec.points = 5;
  spec.spacing = SweepSpec::Spacing::Log;
  const auto g = spec.grid();
  CHECK(g.size() == 5);
  CHECK(g.front() == 1e-7);
  CHECK(g.back() == 1e-6);
  CHECK(g[1] / g[0] == doctest::Approx(g[3] / g[2]).epsilon(1e-12));

  spec.spacing = SweepSpec::Spacing::Linear;
  const auto lin = spec.grid();
  CHECK(lin[2] == doctest::Approx(0.5 * (lin[1] + lin[3])).epsilon(1e-12));

  spec.points = 1;
  CHECK(spec.grid() == std::vector<double>{1e-7});

  spec.points = 0;
  CHECK_THROWS_AS(spec.grid(), ConfigError);
  spec.points = 5;
  spec.L_min = 0.0;
  CHECK_THROWS_AS(spec.grid(), ConfigError);
  spec.L_min = 2e-6;
  CHECK_THROWS_AS(spec.grid(), ConfigError);
}

TEST_CASE("eta_sweep matches pointwise evaluation and is deterministic") {
  SweepSpec spec;
  spec.L_min = 0.2e-6;
  spec.L_max = 1.5e-6;
  spec.points = 4;
  spec.spacing = SweepSpec::Spacing::Log;

  const auto sweep = eta_sweep(kClassical, kClassical, spec, kQuad);
  REQUIRE(sweep.size() == 4);
  for (size_t i = 0; i < sweep.size(); ++i) {
    CHECK(sweep[i].converged);
    CHECK(sweep[i].message.empty());
    if (i > 0) {
      CHECK(sweep[i].result.separation > sweep[i - 1].result.separation);
    }
  }
  const EtaResult direct =
      reduction_factor(kClassical, kClassical, spec.grid()[2], kQuad);
  CHECK(sweep[2].result.eta == direct.eta);

  // Worker count must not affect values.
  setenv("LIFSHITZ_THREADS", "1", 1);
  const auto serial = eta_sweep(kClassical, kClassical, spec, kQuad);
  setenv("LIFSHITZ_THREADS", "3", 1);
  const auto threaded = eta_sweep(kClassical, kClassical, spec, kQuad);
  unsetenv("LIFSHITZ_THREADS");
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].result.eta == threaded[i].result.eta);
    CHECK(serial[i].result.error_estimate == threaded[i].result.error_estimate);
  }

  SweepSpec single = spec;
  single.points = 1;
  const auto one = eta_sweep(kClassical, kClassical, single, kQuad);
  CHECK(one.size() == 1);
  CHECK(one[0].result.eta ==
        reduction_factor(kClassical, kClassical, spec.L_min, kQuad).eta);
}

TEST_CASE("thread cap parsing") {
  setenv("LIFSHITZ_THREADS", "7", 1);
  CHECK(sweep_thread_count() == 7);
  setenv("LIFSHITZ_THREADS", "zero", 1);
  CHECK_THROWS_AS(sweep_thread_count(), ConfigError);
  setenv("LIFSHITZ_THREADS", "0", 1);
  CHECK_THROWS_AS(sweep_thread_count(), ConfigError);
  unsetenv("LIFSHITZ_THREADS");
  CHECK(sweep_thread_count() >= 1);
}

TEST_CASE("budget exhaustion carries a partial result") {
  QuadratureConfig tight;
  tight.rel_tol = 1e-10;
  tight.abs_tol = 0.0;
  tight.max_subdivisions = 1;
  try {
    reduction_factor(kClassical, kClassical, 1e-6, tight);
    FAIL("expected EtaConvergenceError");
  } catch (const EtaConvergenceError& e) {
    CHECK(e.partial.separation == 1e-6);
    CHECK(std::isfinite(e.partial.eta));
    CHECK(e.partial.eta > 0.0);
    CHECK(e.partial.error_estimate > 0.0);
  }

  // The sweep keeps going and marks the failed points instead.
  SweepSpec spec;
  spec.L_min = 0.5e-6;
  spec.L_max = 1e-6;
  spec.points = 2;
  const auto sweep = eta_sweep(kClassical, kClassical, spec, tight);
  REQUIRE(sweep.size() == 2);
  for (const auto& point : sweep) {
    CHECK_FALSE(point.converged);
    CHECK_FALSE(point.message.empty());
    CHECK(std::isfinite(point.result.eta));
  }
}

TEST_CASE("percent difference") {
  SweepSpec spec;
  spec.L_min = 1e-6;
  spec.L_max = 2e-6;
  spec.points = 3;
  spec.spacing = SweepSpec::Spacing::Log;

  const auto base = eta_sweep(kClassical, kClassical, spec, kQuad);
  std::vector<EtaResult> base_results;
  for (const auto& p : base) base_results.push_back(p.result);

  const auto zeros = percent_difference(base_results, base_results);
  for (const auto& d : zeros) CHECK(d.delta_percent == 0.0);

  const PlateConfig nonannealed = film_plate("nonannealed-au", 300e-10);
  const auto cmp = eta_sweep(nonannealed, nonannealed, spec, kQuad);
  std::vector<EtaResult> cmp_results;
  for (const auto& p : cmp) cmp_results.push_back(p.result);

  const auto delta = percent_difference(cmp_results, base_results);
  // Frozen endpoints of the nonannealed film comparison.
  CHECK(delta.front().delta_percent == doctest::Approx(1.6830).epsilon(5e-4));
  CHECK(delta.back().delta_percent == doctest::Approx(1.3476).epsilon(5e-4));
  for (const auto& d : delta) {
    CHECK(d.delta_percent > 0.0);
    CHECK(d.delta_percent < 5.0);
  }

  std::vector<EtaResult> short_grid(base_results.begin(),
                                    base_results.end() - 1);
  CHECK_THROWS_AS(percent_difference(short_grid, base_results), DomainError);

  auto shifted = cmp_results;
  shifted[1].separation *= 1.001;
  CHECK_THROWS_AS(percent_difference(shifted, base_results), DomainError);
}
