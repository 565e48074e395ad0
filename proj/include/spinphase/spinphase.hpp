#pragma once

#include "spinphase/coherent.hpp"
#include "spinphase/concurrence.hpp"
#include "spinphase/density.hpp"
#include "spinphase/doubled.hpp"
#include "spinphase/io.hpp"
#include "spinphase/ising.hpp"
#include "spinphase/quadrature.hpp"
#include "spinphase/rng.hpp"
#include "spinphase/second_moment.hpp"
#include "spinphase/state.hpp"
#include "spinphase/states.hpp"
#include "spinphase/validate.hpp"
#include "spinphase/version.hpp"
