#pragma once

#include "pemc/constants.hpp"
#include "pemc/errors.hpp"
#include "pemc/force.hpp"
#include "pemc/media.hpp"
#include "pemc/quadrature.hpp"
#include "pemc/scatter.hpp"
#include "pemc/specfun.hpp"
#include "pemc/verification.hpp"
