#pragma once

#include "sconvex/bounds.hpp"
#include "sconvex/dsl.hpp"
#include "sconvex/errors.hpp"
#include "sconvex/funcmodel.hpp"
#include "sconvex/harness.hpp"
#include "sconvex/means.hpp"
#include "sconvex/means_bounds.hpp"
#include "sconvex/quadrature.hpp"
