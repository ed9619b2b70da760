#pragma once

#include "hypvol/diagram.hpp"
#include "hypvol/dilog.hpp"
#include "hypvol/error.hpp"
#include "hypvol/fixtures.hpp"
#include "hypvol/holquandle.hpp"
#include "hypvol/hypgeom.hpp"
#include "hypvol/invariant.hpp"
