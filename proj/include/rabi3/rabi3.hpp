#pragma once

// Umbrella header for the three-qubit Rabi ground-state library.

#include "errors.hpp"
#include "exact.hpp"
#include "model.hpp"
#include "observables.hpp"
#include "plot.hpp"
#include "sweep.hpp"
#include "transform.hpp"
#include "version.hpp"
