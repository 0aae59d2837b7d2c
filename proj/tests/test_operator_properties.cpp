#include <doctest.h>

#include "properties.hpp"

namespace {

void require(const properties::Outcome& o) {
  INFO(o.name << ": " << o.failures << " of " << o.probes << " probes failed, worst " << o.worst);
  CHECK(o.passed());
}

}  // namespace

TEST_CASE("property: linearity of every fractional operator") { require(properties::linearity()); }
TEST_CASE("property: pair operator is bilinear") { require(properties::pair_bilinearity()); }
TEST_CASE("property: gamma = 1 product rule") { require(properties::unit_order_product_rule()); }
TEST_CASE("property: reflection duality") { require(properties::reflection_duality()); }
TEST_CASE("property: tau = 0 reduces Noether to momentum") { require(properties::time_free_reduction()); }
