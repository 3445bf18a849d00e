#ifndef CLIPSCALE_CLIPSCALE_HPP
#define CLIPSCALE_CLIPSCALE_HPP

#include "clipscale/core.hpp"
#include "clipscale/errors.hpp"
#include "clipscale/gradient.hpp"
#include "clipscale/oracle.hpp"
#include "clipscale/pnorm.hpp"
#include "clipscale/solver.hpp"

#endif  // CLIPSCALE_CLIPSCALE_HPP
