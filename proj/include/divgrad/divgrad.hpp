#pragma once

// Umbrella header: scale-invariant divergences, the generalized deformed
// logarithm, analytic gradients with positive-part decompositions, and the
// SGM family of constrained minimization algorithms.

#include "divgrad/deformed_log.hpp"
#include "divgrad/divergences.hpp"
#include "divgrad/errors.hpp"
#include "divgrad/field.hpp"
#include "divgrad/invariance.hpp"
#include "divgrad/io.hpp"
#include "divgrad/logdiv.hpp"
#include "divgrad/solver.hpp"
#include "divgrad/verify.hpp"
