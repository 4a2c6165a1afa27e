#include <doctest.h>

#include "property/invariants.hpp"

namespace {

constexpr std::size_t kCases = 1000;

void expect(const invariants::Outcome& o) {
  INFO(invariants::describe(o));
  CHECK(o.cases >= kCases);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("corr2d stays in [-1, 1] and is symmetric") { expect(invariants::corr2d_bounds(kCases, 101)); }
TEST_CASE("corr2d ignores positive affine maps") { expect(invariants::corr2d_affine(kCases, 102)); }
TEST_CASE("fields are symmetric under 180-degree rotation") { expect(invariants::field_rotation(kCases, 103)); }
TEST_CASE("fields ignore amplitude scaling") { expect(invariants::field_amplitude(kCases, 104)); }
TEST_CASE("fields match the brute-force construction") { expect(invariants::field_reference(kCases, 105)); }
TEST_CASE("at most 1/25 of nodes exceed the 5-sigma threshold") { expect(invariants::chebyshev_bound(kCases, 106)); }
TEST_CASE("outlier set is scale invariant") { expect(invariants::locate_scale_invariance(kCases, 107)); }
TEST_CASE("reruns are bit-identical") { expect(invariants::determinism(kCases, 108)); }
TEST_CASE("Laplacian and state-matrix structure") { expect(invariants::laplacian_structure(kCases, 109)); }
