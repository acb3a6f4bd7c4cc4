#ifndef SIQM_SIQM_HPP
#define SIQM_SIQM_HPP

// Umbrella header: the whole library in one include.

#include "siqm/common.hpp"
#include "siqm/families.hpp"
#include "siqm/grid.hpp"
#include "siqm/io.hpp"
#include "siqm/ladder.hpp"
#include "siqm/oracle.hpp"
#include "siqm/printed.hpp"
#include "siqm/sextic.hpp"
#include "siqm/shape_invariance.hpp"

#endif  // SIQM_SIQM_HPP
