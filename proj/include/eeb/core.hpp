#ifndef EEB_CORE_HPP
#define EEB_CORE_HPP

#include "eeb/core/errors.hpp"
#include "eeb/core/grid.hpp"
#include "eeb/core/normal.hpp"
#include "eeb/core/params.hpp"
#include "eeb/core/quadrature.hpp"
#include "eeb/core/roots.hpp"

#endif
