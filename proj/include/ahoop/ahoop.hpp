#pragma once

#include "ahoop/errors.hpp"
#include "ahoop/feasibility.hpp"
#include "ahoop/grid.hpp"
#include "ahoop/model.hpp"
#include "ahoop/parallel.hpp"
#include "ahoop/quadrature.hpp"
#include "ahoop/sp_scattering.hpp"
#include "ahoop/specfun.hpp"
#include "ahoop/static_multichannel.hpp"
#include "ahoop/variational.hpp"
