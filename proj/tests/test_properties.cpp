#include <doctest.h>

#include "properties.hpp"

namespace {

void require(const testing::PropertyResult& r) {
    CAPTURE(r.name);
    CAPTURE(r.first_failure);
    CHECK(r.cases >= 100);
    CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("weighted-form identity") { require(testing::weighted_form_identity()); }
TEST_CASE("scale invariance") { require(testing::scale_invariance()); }
TEST_CASE("translation covariance") { require(testing::translation_covariance()); }
TEST_CASE("affine one-step exactness") { require(testing::affine_one_step()); }
TEST_CASE("root fixed point") { require(testing::root_fixed_point()); }
TEST_CASE("AD agrees with central differences") { require(testing::ad_matches_finite_differences()); }
