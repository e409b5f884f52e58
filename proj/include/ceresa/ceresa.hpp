#pragma once

#include "ceresa/error.hpp"
#include "ceresa/arith.hpp"
#include "ceresa/primes.hpp"
#include "ceresa/classgroup.hpp"
#include "ceresa/poly.hpp"
#include "ceresa/cm_values.hpp"
#include "ceresa/supersingular.hpp"
#include "ceresa/divisor.hpp"
#include "ceresa/catalog.hpp"
#include "ceresa/certify.hpp"
#include "ceresa/isotypic.hpp"
#include "ceresa/sweep.hpp"
