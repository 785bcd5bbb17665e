#pragma once

// Radially symmetric monotone solutions of the Neumann p-Laplace problem
// on the unit ball: cone-constrained maximization, Nehari-set minimization,
// a shooting oracle, and a-posteriori verification.

#include "plaplace/cone.hpp"
#include "plaplace/eigen_solver.hpp"
#include "plaplace/errors.hpp"
#include "plaplace/functionals.hpp"
#include "plaplace/grid.hpp"
#include "plaplace/nehari_solver.hpp"
#include "plaplace/problem.hpp"
#include "plaplace/shooting.hpp"
#include "plaplace/verify.hpp"
