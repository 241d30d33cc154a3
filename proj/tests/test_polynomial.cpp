#include <doctest.h>

#include "bk/polynomial.hpp"
#include "helpers.hpp"

using namespace bk;

TEST_CASE("polynomial basics") {
  RealPolynomial p = RealPolynomial::from_real_roots({1.0, -2.0});
  CHECK(p.degree() == 2);
  CHECK(p(1.0) == doctest::Approx(0.0));
  CHECK(p(0.0) == doctest::Approx(-2.0));
  CHECK(p.derivative_at(0.0) == doctest::Approx(1.0));  // t^2 + t - 2

  RealPolynomial q = RealPolynomial::from_descending({1.0, 0.0, -1.0});
  CHECK(q(2.0) == doctest::Approx(3.0));
}

TEST_CASE("multiplication and division round trip") {
  for (int trial = 0; trial < 20; ++trial) {
    int da = 1 + trial % 3, db = 1 + (trial / 3) % 3;
    Vec ca(da + 1), cb(db + 1);
    for (int i = 0; i < da; ++i) ca(i) = testing::uniform(-2, 2);
    for (int i = 0; i < db; ++i) cb(i) = testing::uniform(-2, 2);
    ca(da) = 1.0;
    cb(db) = 1.0;
    RealPolynomial a(ca), b(cb);
    auto [quot, rem] = (a * b).divide(b);
    CHECK((quot.coeffs() - a.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(rem.cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("companion roots with multiplicity clustering") {
  SUBCASE("simple real roots") {
    RealPolynomial p = RealPolynomial::from_real_roots({3.0, 1.0, -2.0});
    auto rs = p.roots();
    REQUIRE(rs.size() == 3);
    CHECK(rs[0].value.real() == doctest::Approx(3.0));
    CHECK(rs[2].value.real() == doctest::Approx(-2.0));
    for (auto& r : rs) CHECK(r.multiplicity == 1);
  }
  SUBCASE("double root") {
    RealPolynomial p = RealPolynomial::from_real_roots({1.0, 1.0, -2.0});
    auto rs = p.roots();
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].multiplicity == 2);
    CHECK(rs[0].value.real() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("triple root") {
    RealPolynomial p = RealPolynomial::from_real_roots({1.0, 1.0, 1.0, -3.0});
    auto rs = p.roots();
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].multiplicity == 3);
    CHECK(rs[0].value.real() == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("close but distinct roots stay split") {
    RealPolynomial p = RealPolynomial::from_real_roots({1.0 + 1e-4, 1.0, 0.0});
    auto rs = p.roots();
    REQUIRE(rs.size() == 3);
  }
  SUBCASE("complex pair") {
    Vec c(3);
    c << 1.0, 0.0, 1.0;  // t^2 + 1
    auto rs = RealPolynomial(c).roots();
    REQUIRE(rs.size() == 2);
    CHECK(!rs[0].is_real());
    CHECK(rs[0].value.imag() == doctest::Approx(1.0));
  }
}

TEST_CASE("symmetric map and its inverse") {
  Vec y(2);
  y << 2.0, 1.0;
  Vec u = elementary_symmetric(y);
  CHECK(u(0) == doctest::Approx(3.0));
  CHECK(u(1) == doctest::Approx(2.0));
  Vec back = sorted_roots_inverse(u);
  CHECK(back(0) == doctest::Approx(2.0));
  CHECK(back(1) == doctest::Approx(1.0));

  // property: lambda(sigma(y)) = y on random descending tuples
  for (int trial = 0; trial < 25; ++trial) {
    int m = 1 + trial % 4;
    Vec yr(m);
    for (int i = 0; i < m; ++i) yr(i) = testing::uniform(-3, 3);
    std::sort(yr.data(), yr.data() + m, std::greater<double>());
    Vec rt = sorted_roots_inverse(elementary_symmetric(yr));
    CHECK((rt - yr).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + yr.cwiseAbs().maxCoeff()));
  }

  // outside the image: complex roots
  Vec bad(2);
  bad << 0.0, 1.0;  // t^2 + 1
  CHECK_THROWS_AS(sorted_roots_inverse(bad), error);
}
