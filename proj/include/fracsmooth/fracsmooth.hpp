#pragma once

// Umbrella header.

#include "fracsmooth/best_approx.hpp"
#include "fracsmooth/corpus.hpp"
#include "fracsmooth/fft.hpp"
#include "fracsmooth/fractional.hpp"
#include "fracsmooth/parallel.hpp"
#include "fracsmooth/periodic.hpp"
#include "fracsmooth/piecewise.hpp"
#include "fracsmooth/quadrature.hpp"
#include "fracsmooth/ratefit.hpp"
#include "fracsmooth/rng.hpp"
#include "fracsmooth/smoothness.hpp"
#include "fracsmooth/verifier.hpp"
