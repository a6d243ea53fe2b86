#pragma once

// Umbrella header for the dual matrix library: dual scalars and matrices,
// the dual singular value decomposition, unitary similarity forms, four dual
// generalized inverses with existence tests, identity suites, partial orders,
// seeded instance generators, and JSON I/O.

#include "complex_linalg.hpp"
#include "complex_matrix.hpp"
#include "config.hpp"
#include "dual_matrix.hpp"
#include "dual_scalar.hpp"
#include "dual_svd.hpp"
#include "error.hpp"
#include "generalized_inverse.hpp"
#include "generators.hpp"
#include "hs_decomposition.hpp"
#include "io.hpp"
#include "relations.hpp"
