#include <cmath>

#include "doctest.h"
#include "levi/analysis.hpp"
#include "levi/compose.hpp"
#include "levi/errors.hpp"
#include "levi/transform.hpp"

using namespace levi;

namespace {

IntegralMap class_l() { return IntegralMap(SpaceTransform::exp_decay(), TimeChange::linear(), Interval(0, kInf)); }
IntegralMap e_map() { return IntegralMap(SpaceTransform::linear(), TimeChange::one_minus_exp(), Interval(0, kInf)); }
IntegralMap t_tbeta(double beta) {
  return IntegralMap(SpaceTransform::linear(), TimeChange::power(beta), Interval(0, 1));
}
IntegralMap identity() { return IntegralMap(SpaceTransform::constant(1.0), TimeChange::linear(), Interval(0, 1)); }

LevyTriple poisson3() {
  return LevyTriple(0.3, 0.0, LevyMeasure::atomic({{0.5, 1.0}, {-1.5, 0.7}, {3.0, 0.4}}));
}

}  // namespace

TEST_CASE("fixed point constants") {
  for (double beta : {0.5, 1.0, 2.0})
    for (double p : {0.5, 1.0, 2.0}) CHECK(fixed_point_constant(t_tbeta(beta), p) == doctest::Approx(beta / (beta + p)));
  CHECK(fixed_point_constant(t_tbeta(1.0), 1.0) == doctest::Approx(0.5));
  for (double p : {0.3, 1.0, 1.7, 2.0}) CHECK(fixed_point_constant(class_l(), p) == doctest::Approx(1.0 / p));
  IntegralMap r7(SpaceTransform::linear(), TimeChange::power(-3.0), Interval(0, 1));
  for (double p : {0.5, 1.0, 2.0}) CHECK(std::isinf(fixed_point_constant(r7, p)));
  CHECK_THROWS_AS(fixed_point_constant(class_l(), 2.5), InputError);
}

TEST_CASE("stable laws are fixed points") {
  const std::vector<double> ys = default_y_grid();
  FixedPointReport a = verify_fixed_point(identity(), StableLaw{1.3, 0.7}, ys);
  CHECK(a.c == doctest::Approx(1.0));
  CHECK(a.passed);
  FixedPointReport b = verify_fixed_point(IntegralMap(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1)),
                                          StableLaw{2.0, 0.5}, ys);
  CHECK(b.c == doctest::Approx(1.0 / 3.0));
  CHECK(b.passed);
  FixedPointReport c = verify_fixed_point(class_l(), StableLaw{1.0, 1.0}, ys);
  CHECK(c.c == doctest::Approx(1.0));
  CHECK(c.passed);
  for (double p : {0.5, 1.5})
    for (const IntegralMap& m : {class_l(), t_tbeta(2.0), e_map()}) {
      FixedPointReport r = verify_fixed_point(m, StableLaw{p, 1.2}, ys);
      CHECK(r.max_error < 1e-8);
      CHECK(r.index_preserved);
    }
}

TEST_CASE("stable class preservation") {
  CHECK(class_preservation_scan(class_l(), default_p_grid()).preserved);
  CHECK(class_preservation_scan(identity(), default_p_grid()).preserved);
  IntegralMap r7(SpaceTransform::linear(), TimeChange::power(-3.0), Interval(0, 1));
  PreservationReport r = class_preservation_scan(r7, default_p_grid());
  CHECK_FALSE(r.preserved);
  for (const PreservationRow& row : r.rows) CHECK_FALSE(row.finite);
}

TEST_CASE("fixed point constant is multiplicative under composition") {
  const IntegralMap m1(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1));
  for (double p : {0.5, 1.0, 1.5, 2.0}) {
    const double c12 = fixed_point_constant(compose({m1, class_l()}), p);
    CHECK(std::abs(c12 - fixed_point_constant(m1, p) * fixed_point_constant(class_l(), p)) < 1e-8);
    const double ct = fixed_point_constant(compose({class_l(), e_map()}), p);
    CHECK(std::abs(ct - fixed_point_constant(class_l(), p) * fixed_point_constant(e_map(), p)) < 1e-8);
  }
}

TEST_CASE("class L factorization") {
  const IntegralMap prime(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1));
  FactorizationReport r = check_factorization(class_l(), prime, poisson3(), default_y_grid());
  CHECK(r.image_condition);
  CHECK(r.measure_condition);
  CHECK(r.condition_holds);
  CHECK(r.factorization_error < 1e-6);
  CHECK(r.first_identity_error < 1e-6);
  CHECK(r.triple_route_error < 1e-6);
  CHECK(r.identity_holds);
}

TEST_CASE("trivial and failing factorizations") {
  IntegralMap zero = IntegralMap::trivial(SpaceTransform::constant(0.0), TimeChange::linear(), Interval(0, 1));
  FactorizationReport t = check_factorization(zero, identity(), poisson3(), default_y_grid());
  CHECK(t.first_identity_error < 1e-9);
  CHECK_FALSE(t.condition_holds);

  // h rho = Lebesgue on (0, 1], h' rho' = 2w dw: the difference is negative near 1.
  IntegralMap sq(SpaceTransform::linear(), TimeChange::power(2.0), Interval(0, 1));
  IntegralMap lin(SpaceTransform::linear(), TimeChange::linear(), Interval(0, 1));
  FactorizationReport f = check_factorization(lin, sq, poisson3(), default_y_grid());
  CHECK_FALSE(f.measure_condition);
  CHECK_FALSE(f.condition_holds);
}

TEST_CASE("stochastic area integral identity") {
  AreaReport r = stochastic_area_identity(1.0, {1e-6, 0.1, 0.5, 1.0, 2.0, 5.0});
  CHECK(r.passed);
  CHECK(std::abs(r.rows.front().log_phi) < 1e-11);
  CHECK(std::abs(r.rows.front().integral) < 1e-11);
  CHECK(r.rows[3].log_phi == doctest::Approx(-0.16143936).epsilon(1e-7));
  // Oracle: int_0^1 (1 - w coth w) / w dw after w = e^-s.
  const double oracle = integrate_finite(
                            [](double w) {
                              const double c = w < 1e-4 ? w * w / 3.0 : w / std::tanh(w) - 1.0;
                              return cplx(-c / w);
                            },
                            0.0, 1.0, QuadOptions{.abs_tol = 1e-14, .rel_tol = 1e-13})
                            .real();
  CHECK(std::abs(r.rows[3].integral - oracle) < 1e-9);
  CHECK(stochastic_area_identity(1.0, {2.0}).product_error < 1e-15);
}

TEST_CASE("moment class predicates") {
  const LevyTriple bounded = poisson3();
  for (double m : {1.0, 2.0, 4.0}) CHECK(class_membership(ClassTag{ClassId::ID_log_m, m}, bounded).member);
  CHECK(class_membership(ClassTag{ClassId::ID_log, 1.0}, bounded).member);
  CHECK(class_membership(ClassTag{ClassId::ID_2, 2.0}, bounded).member);

  LevyTriple heavy(0.0, 0.0, LevyMeasure::density({DensityPiece{1.0, 2.0, 0.0, 0.0, 0.0, 1.0, kInf}}));
  MembershipReport l = class_membership(ClassTag{ClassId::ID_log, 1.0}, heavy);
  CHECK(l.member);
  CHECK(l.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_FALSE(class_membership(ClassTag{ClassId::ID_2, 2.0}, heavy).member);
  MembershipReport b = class_membership(ClassTag{ClassId::ID_beta, -0.5}, heavy);
  CHECK(b.member);
  CHECK(b.value == doctest::Approx(2.0).epsilon(1e-8));
  LevyTriple sym(0.0, 0.0,
                 LevyMeasure::density({DensityPiece{1.0, 2.0, 0.0, 0.0, 0.0, 1.0, kInf},
                                       DensityPiece{1.0, 2.0, 0.0, 0.0, 0.0, -kInf, -1.0}}));
  CHECK_FALSE(class_membership(ClassTag{ClassId::ID_beta, -1.0}, sym).member);
  CHECK(class_membership(ClassTag{ClassId::ID_beta, -0.9}, sym).member);
  CHECK_THROWS_AS(class_membership(ClassTag{ClassId::ID_beta, -1.5}, poisson3()), UnsupportedError);
}

TEST_CASE("range class membership") {
  const ClassTag L = ClassTag::parse("L");
  CHECK_FALSE(class_membership(L, poisson3()).member);
  CHECK(class_membership(L, LevyTriple(0.2, 1.0)).member);
  CHECK(class_membership(L, StableLaw{1.0, 1.0}.triple()).member);

  const LevyTriple in_e = transform_triple(e_map(), poisson3());
  CHECK(class_membership(ClassTag::parse("E"), in_e).member);
  CHECK_THROWS_AS(class_membership(ClassTag::parse("Thorin"), in_e), UnsupportedError);

  // Thorin law built in one step and in two steps.
  const LevyTriple one = transform_triple(compose({class_l(), e_map()}), poisson3());
  const LevyTriple two = transform_triple(class_l(), in_e);
  for (const LevyTriple& t : {one, two}) {
    for (const char* tag : {"Thorin", "L", "E"}) {
      MembershipReport r = class_membership(ClassTag::parse(tag), t);
      CHECK_MESSAGE(r.member, tag);
      CHECK(r.criterion == "constructive");
    }
  }
}

TEST_CASE("Thorin laws reconstruct as L and E images") {
  InclusionReport r = thorin_inclusion_check(poisson3(), default_y_grid());
  CHECK(r.l_range_error < 1e-6);
  CHECK(r.e_range_error < 1e-6);
  CHECK(r.passed);
}

TEST_CASE("class tag names parse back") {
  for (const char* s : {"L", "L_2", "U_0.5", "U_-1.5", "Thorin", "E", "ID_log", "ID_log^3", "ID_beta(-0.5)", "ID_2"}) {
    CHECK(ClassTag::parse(ClassTag::parse(s).name()).name() == ClassTag::parse(s).name());
  }
  CHECK(ClassTag::parse("U_-1.5").defining_map().has_value());
  CHECK_THROWS_AS(ClassTag::parse("L_1.5"), InputError);
  CHECK_THROWS_AS(ClassTag::parse("nope"), InputError);
}
