#pragma once

#include "subsfc/builtins.hpp"
#include "subsfc/cantor.hpp"
#include "subsfc/curve.hpp"
#include "subsfc/error.hpp"
#include "subsfc/fractal.hpp"
#include "subsfc/geometry.hpp"
#include "subsfc/io.hpp"
#include "subsfc/ordering.hpp"
#include "subsfc/rational.hpp"
#include "subsfc/raster.hpp"
#include "subsfc/substitution.hpp"
#include "subsfc/svg.hpp"
