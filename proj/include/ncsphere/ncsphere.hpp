#pragma once

// Umbrella header: exact *-polynomial algebra over theta-deformed spheres and
// quantum tori, the recursive K1 generator matrices, finite cyclic actions,
// generator-image homomorphisms, rational torus representations, and
// winding-number checks.

#include "ncsphere/actions.hpp"
#include "ncsphere/config.hpp"
#include "ncsphere/context.hpp"
#include "ncsphere/cyclotomic.hpp"
#include "ncsphere/errors.hpp"
#include "ncsphere/homs.hpp"
#include "ncsphere/monomial.hpp"
#include "ncsphere/parameter_matrix.hpp"
#include "ncsphere/parser.hpp"
#include "ncsphere/poly_matrix.hpp"
#include "ncsphere/rational.hpp"
#include "ncsphere/rep_eval.hpp"
#include "ncsphere/rng.hpp"
#include "ncsphere/scalar.hpp"
#include "ncsphere/serialization.hpp"
#include "ncsphere/star_polynomial.hpp"
#include "ncsphere/suites.hpp"
#include "ncsphere/winding.hpp"
