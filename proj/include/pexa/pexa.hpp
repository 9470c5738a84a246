#pragma once

/// Umbrella header.

#include "core.hpp"
#include "exactness.hpp"
#include "generate.hpp"
#include "geometry.hpp"
#include "hmod.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "smod.hpp"
#include "tables.hpp"
