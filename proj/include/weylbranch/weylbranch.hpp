// Umbrella header.
#ifndef WEYLBRANCH_WEYLBRANCH_HPP_
#define WEYLBRANCH_WEYLBRANCH_HPP_

#include "rational.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "algebra.hpp"
#include "orbits.hpp"
#include "projections.hpp"
#include "branching.hpp"
#include "records.hpp"

#endif  // WEYLBRANCH_WEYLBRANCH_HPP_
