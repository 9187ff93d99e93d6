#include "condshrink/spiked.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"

using namespace condshrink;
using namespace condshrink::testing;

TEST_CASE("bulk edges") {
  const auto [lo50, hi50] = bulk_edges(50.0);
  CHECK(hi50 == doctest::Approx(65.14213562373095).epsilon(1e-12));
  CHECK(bulk_edges(11.9).upper == doctest::Approx(19.79927532426413));
  const auto [lo1, hi1] = bulk_edges(1.0);
  CHECK(lo1 == doctest::Approx(0.0).scale(1));
  CHECK(hi1 == doctest::Approx(4.0));
  CHECK(lo50 <= hi50);
  CHECK_THROWS_AS(bulk_edges(0.0), std::domain_error);
  CHECK_THROWS_AS(bulk_edges(-1.0), std::domain_error);
  CHECK_THROWS_AS(bulk_edges(std::nan("")), std::domain_error);
}

TEST_CASE("spike detection threshold") {
  CHECK(spike_detection_threshold(1.0) == doctest::Approx(2.0));
  CHECK(spike_detection_threshold(4.0) == doctest::Approx(3.0));
  CHECK(spike_detection_threshold(0.5) ==
        doctest::Approx(1.7071067811865475).epsilon(1e-14));
  // Continuity of eigen_map at the threshold.
  const double g = 0.5;
  const double t = spike_detection_threshold(g);
  CHECK(eigen_map(t, g) == doctest::Approx(bulk_edge_upper(g)).epsilon(1e-12));
  CHECK(eigen_map(t + 1e-9, g) ==
        doctest::Approx(bulk_edge_upper(g)).epsilon(1e-7));
}

TEST_CASE("eigen_map values") {
  CHECK(eigen_map(5.0, 1.0) == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(eigen_map(1.5, 1.0) == doctest::Approx(4.0));  // dead branch
  CHECK(eigen_map(52.92582403567252, 50.0) ==
        doctest::Approx(103.8887360535088).epsilon(1e-10));
  CHECK_THROWS_AS(eigen_map(0.5, 1.0), std::domain_error);
}

TEST_CASE("eigen_inverse values and edge behavior") {
  CHECK(eigen_inverse(6.25, 1.0) == doctest::Approx(5.0).epsilon(1e-13));
  CHECK(eigen_inverse(103.8887360535088, 50.0) ==
        doctest::Approx(52.92582403567252).epsilon(1e-10));
  CHECK_THROWS_AS(eigen_inverse(4.0, 1.0), std::domain_error);  // at the edge
  CHECK_THROWS_AS(eigen_inverse(3.0, 1.0), std::domain_error);
}

TEST_CASE("cosine2 and sine2") {
  CHECK(cosine2(5.0, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(sine2(5.0, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
  for (double g : {0.1, 1.0, 7.0}) {
    CHECK(cosine2(spike_detection_threshold(g), g) == 0.0);
  }
  // Large-spike limits: c^2 -> 1 and ell * s^2 -> gamma.
  for (double g : {0.05, 0.5, 2.0, 20.0}) {
    const double ell = 1e8;
    CHECK(cosine2(ell, g) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ell * sine2(ell, g) == doctest::Approx(g).epsilon(1e-6));
  }
  CHECK_THROWS_AS(cosine2(0.99, 1.0), std::domain_error);
}

TEST_CASE("roundtrip eigen_inverse(eigen_map)") {
  for (double g : log_grid(0.01, 100.0, 17)) {
    const double lo = spike_detection_threshold(g) * (1.0 + 1e-5);
    for (double ell : log_grid(lo, 1e6, 60)) {
      const double lambda = eigen_map(ell, g);
      const double back = eigen_inverse(lambda, g);
      CHECK(back == doctest::Approx(ell).epsilon(1e-10));
      CHECK(eigen_map(back, g) == doctest::Approx(lambda).epsilon(1e-12));
    }
    // Approaching the detection threshold the map flattens out
    // (d lambda/d ell -> 0), so the inverse's condition number blows up
    // like 1/delta; the roundtrip can only be accurate to eps/delta there.
    for (double delta : {1e-5, 1e-7}) {
      const double ell = spike_detection_threshold(g) * (1.0 + delta);
      const double back = eigen_inverse(eigen_map(ell, g), g);
      CHECK(back == doctest::Approx(ell).epsilon(1e-13 / delta));
    }
  }
}

TEST_CASE("eigen_map monotone and displaced upward") {
  for (double g : {0.2, 1.0, 5.0}) {
    double prev = eigen_map(1.0, g);
    for (double ell : lin_grid(1.0, 50.0, 400)) {
      const double lam = eigen_map(ell, g);
      CHECK(lam >= prev - 1e-12);
      CHECK(lam >= std::max(ell, bulk_edge_upper(g)) - 1e-12);
      if (ell > spike_detection_threshold(g) + 0.2) {
        CHECK(lam > prev);  // strictly increasing above the threshold
      }
      prev = lam;
    }
  }
}

TEST_CASE("exact complement and eigen_pair") {
  for (double ell : lin_grid(1.0, 30.0, 100)) {
    const EigenPair pair = eigen_pair(ell, 0.7);
    CHECK(pair.c2 + pair.s2 == 1.0);  // exact by construction
    CHECK(pair.c2 >= 0.0);
    CHECK(pair.c2 < 1.0);
    CHECK(pair.lambda >= bulk_edge_upper(0.7) - 1e-12);
  }
}

TEST_CASE("SpikeConfig validation") {
  CHECK_NOTHROW(SpikeConfig(1.0, {5.0, 3.0, 1.5}));
  CHECK_THROWS_AS(SpikeConfig(1.0, {}), std::domain_error);
  CHECK_THROWS_AS(SpikeConfig(1.0, {3.0, 5.0}), std::domain_error);
  CHECK_THROWS_AS(SpikeConfig(1.0, {5.0, 5.0}), std::domain_error);
  CHECK_THROWS_AS(SpikeConfig(1.0, {5.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(SpikeConfig(-2.0, {5.0}), std::domain_error);
}
