// Umbrella header.
#pragma once

#include "hardycone/cli.hpp"
#include "hardycone/constants.hpp"
#include "hardycone/errors.hpp"
#include "hardycone/extended.hpp"
#include "hardycone/grid.hpp"
#include "hardycone/interp.hpp"
#include "hardycone/json_io.hpp"
#include "hardycone/oracle.hpp"
#include "hardycone/params.hpp"
#include "hardycone/profile.hpp"
#include "hardycone/quadrature.hpp"
#include "hardycone/transforms.hpp"
#include "hardycone/verify.hpp"
#include "hardycone/weights.hpp"
