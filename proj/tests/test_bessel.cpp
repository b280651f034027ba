#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "subplanck/bessel.hpp"
#include "subplanck/error.hpp"

using namespace subplanck;

namespace {

struct Reference {
  double nu;
  double xi;
  double value;
  bool below_range;  // true value is below 1e-300
};

// 50-digit reference values of Gamma(nu + 1) (xi / 2)^-nu J_nu(xi).
const Reference kReference[] = {
    {0.0, 0.7, 8.8120088860740529545e-1, false},
    {0.0, 5.0, -1.7759677131433830435e-1, false},
    {0.0, 13.3, 2.1829809031927706576e-1, false},
    {0.0, 29.9, -9.7811150066062445526e-2, false},
    {0.0, 50.0, 5.5812327669251815005e-2, false},
    {0.0, 75.0, 3.4643913805097056137e-2, false},
    {0.0, 180.0, -5.8862596948708744127e-2, false},
    {0.0, 1200.0, 1.47835520016522058e-2, false},
    {0.0, 40000.0, 3.5801470361133654579e-3, false},
    {0.0, 990000.0, -9.3808174726708030826e-5, false},
    {0.5, 0.7, 9.2031098176813008654e-1, false},
    {0.5, 5.0, -1.9178485493262769378e-1, false},
    {0.5, 13.3, 5.0343591142601674719e-2, false},
    {0.5, 29.9, -3.3394482630896813194e-2, false},
    {0.5, 50.0, -5.2474970740785757183e-3, false},
    {0.5, 75.0, -5.1704218054590725031e-3, false},
    {0.5, 180.0, -4.4508479762990582097e-3, false},
    {0.5, 1200.0, -7.356550539310512432e-5, false},
    {0.5, 40000.0, 2.3663491419643342194e-5, false},
    {0.5, 990000.0, 6.2579103125654730479e-7, false},
    {1.0, 0.7, 9.3998783297159700131e-1, false},
    {1.0, 5.0, -1.3103165503658608882e-1, false},
    {1.0, 13.3, -7.7856850446177499722e-4, false},
    {1.0, 29.9, -7.3522950307272417772e-3, false},
    {1.0, 50.0, -3.9004731250070055065e-3, false},
    {1.0, 75.0, -2.2703998678621094384e-3, false},
    {1.0, 180.0, -9.6070202823536364468e-5, false},
    {1.0, 1200.0, -2.9427194441004742183e-5, false},
    {1.0, 40000.0, 8.8008508792290793786e-8, false},
    {1.0, 990000.0, 1.6088854212733073437e-9, false},
    {2.5, 0.7, 9.6547286867187924341e-1, false},
    {2.5, 5.0, 8.0838726051075131274e-2, false},
    {2.5, 13.3, -5.2648462490589845573e-3, false},
    {2.5, 29.9, 5.5533589361248561845e-4, false},
    {2.5, 50.0, 2.4499445060394872991e-5, false},
    {2.5, 75.0, 1.2469502853270119188e-5, false},
    {2.5, 180.0, 2.0860411250476417929e-6, false},
    {2.5, 1200.0, 7.4468908855612551774e-10, false},
    {2.5, 40000.0, -2.218509021261311245e-13, false},
    {2.5, 990000.0, -9.5774200876773567944e-18, false},
    {7.0, 0.7, 9.8479128572727800236e-1, false},
    {7.0, 5.0, 4.4075762841303319473e-1, false},
    {7.0, 13.3, -2.0117522819659633242e-3, false},
    {7.0, 29.9, 4.4508269261241914455e-6, false},
    {7.0, 50.0, 4.9950827208387301575e-8, false},
    {7.0, 75.0, 3.3771598092304711128e-9, false},
    {7.0, 180.0, 1.7279752474108732649e-12, false},
    {7.0, 1200.0, 3.1249978416428947121e-18, false},
    {7.0, 40000.0, -6.9391269168222268303e-30, false},
    {7.0, 990000.0, -5.5121778165250312069e-40, false},
    {14.0, 0.7, 9.918645213892136799e-1, false},
    {14.0, 5.0, 6.5555208388727922838e-1, false},
    {14.0, 13.3, 3.6377748181966623745e-2, false},
    {14.0, 29.9, -2.4849945347266313921e-7, false},
    {14.0, 50.0, -1.6342261860221801928e-10, false},
    {14.0, 75.0, -7.3929603090652564434e-13, false},
    {14.0, 180.0, 1.7536450943841395791e-18, false},
    {14.0, 1200.0, -1.7995061806366944146e-30, false},
    {14.0, 40000.0, -1.9026747709278830241e-52, false},
    {14.0, 990000.0, 1.5436224060307694162e-73, false},
    {49.5, 0.7, 9.9757714016824961127e-1, false},
    {49.5, 5.0, 8.8345797428202212858e-1, false},
    {49.5, 13.3, 4.134126746949416644e-1, false},
    {49.5, 29.9, 9.6438248299461328048e-3, false},
    {49.5, 50.0, 3.7153837436230901005e-7, false},
    {49.5, 75.0, 3.3886531632969459749e-16, false},
    {49.5, 180.0, 3.6098389459154804097e-36, false},
    {49.5, 1200.0, -1.78493864164531677e-76, false},
    {49.5, 40000.0, -6.3091099091936379839e-153, false},
    {49.5, 990000.0, 3.5395349315270005671e-222, false},
    {149.0, 0.7, 9.9918366450815723017e-1, false},
    {149.0, 5.0, 9.5918394100436015973e-1, false},
    {149.0, 13.3, 7.4445325356687797147e-1, false},
    {149.0, 29.9, 2.2369628046264567748e-1, false},
    {149.0, 50.0, 1.4605320962824660341e-2, false},
    {149.0, 75.0, 6.1704079212457653501e-5, false},
    {149.0, 180.0, 8.6446797436494150618e-33, false},
    {149.0, 1200.0, 8.6113492307674180078e-156, false},
    {149.0, 40000.0, 0.0, true},
    {149.0, 990000.0, 0.0, true},
    {400.0, 0.7, 9.9969456025585796354e-1, false},
    {400.0, 5.0, 9.8453450125493889926e-1, false},
    {400.0, 13.3, 8.9556929352888526904e-1, false},
    {400.0, 29.9, 5.7249576440334078079e-1, false},
    {400.0, 50.0, 2.0979159738058812122e-1, false},
    {400.0, 75.0, 2.9530420009368778367e-2, false},
    {400.0, 180.0, 9.7899706855129181273e-10, false},
    {400.0, 1200.0, -7.4776014129375177088e-245, false},
    {400.0, 40000.0, 0.0, true},
    {400.0, 990000.0, 0.0, true},
    {1499.0, 0.7, 9.999183366657432931e-1, false},
    {1499.0, 5.0, 9.9584199608595353474e-1, false},
    {1499.0, 13.3, 9.7094839707782779273e-1, false},
    {1499.0, 29.9, 8.6156130634945168829e-1, false},
    {1499.0, 50.0, 6.5920249211201453387e-1, false},
    {1499.0, 75.0, 3.9149089618252954475e-1, false},
    {1499.0, 180.0, 4.4727117294536362278e-3, false},
    {1499.0, 1200.0, 6.3432369645378134966e-116, false},
    {1499.0, 40000.0, 0.0, true},
    {1499.0, 990000.0, 0.0, true},
    {2000.0, 0.7, 9.999387824826278277e-1, false},
    {2000.0, 5.0, 9.9688143214887286751e-1, false},
    {2000.0, 13.3, 9.7814210106984207473e-1, false},
    {2000.0, 29.9, 8.9431383604553236499e-1, false},
    {2000.0, 50.0, 7.3171206337196274551e-1, false},
    {2000.0, 75.0, 4.9514876793978392542e-1, false},
    {2000.0, 180.0, 1.7386182168800665953e-2, false},
    {2000.0, 1200.0, 7.008209477282083234e-83, false},
    {2000.0, 40000.0, 0.0, true},
    {2000.0, 990000.0, 0.0, true},
};

}  // namespace

TEST_CASE("relative accuracy against high-precision references") {
  for (const auto& r : kReference) {
    CAPTURE(r.nu);
    CAPTURE(r.xi);
    const double v = scaled_bessel(r.nu, r.xi);
    REQUIRE(std::isfinite(v));
    if (r.below_range) {
      CHECK(std::abs(v) < 1e-300);
      continue;
    }
    const double tol = r.xi <= 50 ? 1e-10 : 1e-8;
    CHECK(std::abs(v - r.value) <= tol * std::abs(r.value));
  }
}

TEST_CASE("known values and roots") {
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976866).epsilon(1e-10));
  CHECK(bessel_j(0, 2.404825557695773) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bessel_j(1, 3.831705970207512) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(bessel_j(0, 3.831705970207512)) == doctest::Approx(0.402759395702553).epsilon(1e-12));
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-9) == doctest::Approx(1.0));
  CHECK(sinc(std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("half-integer orders have closed forms") {
  for (double xi : {0.01, 0.5, 3.0, 12.0, 40.0, 300.0}) {
    CAPTURE(xi);
    CHECK(scaled_bessel(0.5, xi) == doctest::Approx(std::sin(xi) / xi).epsilon(1e-12));
    const double l32 = 3.0 * (std::sin(xi) - xi * std::cos(xi)) / (xi * xi * xi);
    CHECK(std::abs(scaled_bessel(1.5, xi) - l32) < 1e-12);
  }
}

TEST_CASE("order one is the Airy disk factor") {
  for (double xi : {0.1, 1.0, 3.0, 10.0, 42.0}) {
    CAPTURE(xi);
    CHECK(std::abs(scaled_bessel(1, xi) - 2 * oracle::bessel_j_integral(1, xi) / xi) < 1e-12);
  }
}

TEST_CASE("integer orders agree with Bessel's integral") {
  for (int n : {0, 1, 2, 5, 17, 60}) {
    for (double x : {0.3, 2.0, 7.5, 24.0, 26.0, 55.0, 140.0}) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(std::abs(bessel_j(n, x) - oracle::bessel_j_integral(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("scaled kernel agrees with Poisson's integral in every regime") {
  struct Case {
    double nu;
    double xi;
  };
  // series (xi^2 <= 4 nu + 10), Miller recurrence, Hankel asymptotics, and high orders
  const Case cases[] = {{0, 0.5},    {0, 3.0},    {0, 3.3},    {0, 20},    {0, 30},     {0, 90},     {1, 3.7},
                        {1, 3.8},    {1, 25.5},   {2, 4.2},    {2, 4.3},   {2, 40},     {4.5, 11},   {6.5, 30},
                        {6.5, 60},   {10, 6},     {10, 7},     {10, 80},   {25, 40},    {49.5, 60},  {149, 30},
                        {149, 55},   {149, 300},  {1499, 90},  {1499, 94.9}, {1499, 200}, {1499, 2000}, {1999, 100}};
  for (const auto& c : cases) {
    CAPTURE(c.nu);
    CAPTURE(c.xi);
    const double ref = oracle::lambda_poisson(c.nu, c.xi, 1200, 24);
    CHECK(std::abs(scaled_bessel(c.nu, c.xi) - ref) < 1e-11);
  }
}

TEST_CASE("kernel is bounded and continuous across regime boundaries") {
  for (double nu = 0; nu <= 60; nu += 0.5) {
    const double b = std::sqrt(4 * nu + 10);
    const double lo = scaled_bessel(nu, b * (1 - 1e-9));
    const double hi = scaled_bessel(nu, b * (1 + 1e-9));
    CHECK(std::abs(lo - hi) < 1e-8);
    for (double xi = 0; xi < 200; xi += 0.37) REQUIRE(std::abs(scaled_bessel(nu, xi)) <= 1.0 + 1e-14);
  }
  for (double nu : {0.0, 0.5, 3.0, 4.5}) {
    CHECK(std::abs(scaled_bessel(nu, 25 - 1e-9) - scaled_bessel(nu, 25 + 1e-9)) < 1e-8);
  }
}

TEST_CASE("three-term recurrence holds at high order") {
  for (double nu : {20.0, 300.5, 1200.0}) {
    for (double xi : {10.0, nu * 0.9, nu * 1.1, 3 * nu}) {
      const double a = bessel_j(nu - 1, xi);
      const double b = bessel_j(nu, xi);
      const double c = bessel_j(nu + 1, xi);
      const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
      if (scale < 1e-250) continue;
      CAPTURE(nu);
      CAPTURE(xi);
      CHECK(std::abs(a + c - 2 * nu / xi * b) < 1e-10 * scale);
    }
  }
}

TEST_CASE("small argument expansion and deep underflow") {
  for (double nu : {0.0, 7.5, 1499.0}) {
    const double xi = 1e-4;
    CHECK(scaled_bessel(nu, xi) == doctest::Approx(1.0 - xi * xi / (4 * (nu + 1))).epsilon(1e-15));
  }
  // J_1000(1) is ~1e-2570; the scaled kernel stays finite.
  CHECK(bessel_j(1000, 1.0) == 0.0);
  CHECK(scaled_bessel(1000, 1.0) ==
        doctest::Approx(1.0 - 1.0 / 4004.0 + 1.0 / (32.0 * 1001 * 1002) - 1.0 / (384.0 * 1001 * 1002 * 1003))
            .epsilon(1e-14));
}

TEST_CASE("out-of-domain input throws") {
  CHECK_THROWS_AS(scaled_bessel(-0.5, 1.0), DomainError);
  CHECK_THROWS_AS(scaled_bessel(0.3, 1.0), DomainError);
  CHECK_THROWS_AS(scaled_bessel(2000.5, 1.0), DomainError);
  CHECK_THROWS_AS(scaled_bessel(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(scaled_bessel(1.0, 2e6), DomainError);
  CHECK_THROWS_AS(scaled_bessel(1.0, std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_NOTHROW(scaled_bessel(2000.0, 1e6));
}
