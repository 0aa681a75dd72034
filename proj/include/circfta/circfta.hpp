#pragma once

#include "circfta/circulant.hpp"
#include "circfta/error.hpp"
#include "circfta/poly_roots.hpp"
#include "circfta/scalar.hpp"
#include "circfta/solver.hpp"
#include "circfta/spectral.hpp"
