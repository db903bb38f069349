#pragma once

// Spherical functions on Euclidean motion groups: Haar sampling on compact
// groups, the classification of sphere-transitive rotation groups, radial
// and Monte Carlo spherical-function evaluators with a large-argument
// asymptotic branch, Bochner positive-definiteness testing, and plane-wave
// synthesis/analysis for Laplacian eigenspaces on R^2 and R^3.

#include "mh/bessel_series.hpp"
#include "mh/classification.hpp"
#include "mh/eigenspace.hpp"
#include "mh/gamma.hpp"
#include "mh/groups.hpp"
#include "mh/io.hpp"
#include "mh/log_complex.hpp"
#include "mh/motion_model.hpp"
#include "mh/positivity.hpp"
#include "mh/quadrature.hpp"
#include "mh/rng.hpp"
#include "mh/spherical.hpp"
