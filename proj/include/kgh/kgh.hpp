#pragma once

// Umbrella header for the Klein-Gordon-Hartree laboratory.

#include "besov.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "experiments.hpp"
#include "fft.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "initial_data.hpp"
#include "integrator.hpp"
#include "io.hpp"
#include "multiplier.hpp"
#include "nonlinearity.hpp"
#include "profiles.hpp"
#include "propagators.hpp"
#include "scattering.hpp"
