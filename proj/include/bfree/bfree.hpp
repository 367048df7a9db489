#pragma once

// Umbrella header.

#include "bfree/bfamily.hpp"
#include "bfree/bigint.hpp"
#include "bfree/box.hpp"
#include "bfree/cache.hpp"
#include "bfree/config.hpp"
#include "bfree/dynamics.hpp"
#include "bfree/entropy.hpp"
#include "bfree/errors.hpp"
#include "bfree/factor.hpp"
#include "bfree/ideal.hpp"
#include "bfree/measure.hpp"
#include "bfree/order.hpp"
#include "bfree/poly.hpp"
#include "bfree/report.hpp"
#include "bfree/selfcheck.hpp"
#include "bfree/sieve.hpp"
#include "bfree/window.hpp"
