#pragma once

#include "qwell1d/analytic.hpp"
#include "qwell1d/banded_eigen.hpp"
#include "qwell1d/config.hpp"
#include "qwell1d/constants.hpp"
#include "qwell1d/csv.hpp"
#include "qwell1d/grid.hpp"
#include "qwell1d/numerov.hpp"
#include "qwell1d/pdm.hpp"
#include "qwell1d/run.hpp"
#include "qwell1d/scattering.hpp"
#include "qwell1d/structure.hpp"
#include "qwell1d/sweep.hpp"
#include "qwell1d/tmm.hpp"
#include "qwell1d/validate.hpp"
