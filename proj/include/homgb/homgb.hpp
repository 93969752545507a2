#ifndef HOMGB_HOMGB_HPP
#define HOMGB_HOMGB_HPP

// homgb: Groebner-based homological algebra over quotients of polynomial
// rings - free resolutions, Ext/Tor, Bass/Betti numbers at primes, and the
// asymptotic behavior of M/I^n M across n.

#include "homgb/rational.hpp"
#include "homgb/field.hpp"
#include "homgb/monomial.hpp"
#include "homgb/polynomial.hpp"
#include "homgb/groebner_core.hpp"
#include "homgb/ring.hpp"
#include "homgb/groebner.hpp"
#include "homgb/modpres.hpp"
#include "homgb/homalg.hpp"
#include "homgb/localinv.hpp"
#include "homgb/asympt.hpp"
#include "homgb/session.hpp"
#include "homgb/report.hpp"

#endif
