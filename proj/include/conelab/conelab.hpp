#pragma once

#include "conelab/complex_io.hpp"
#include "conelab/conemodel.hpp"
#include "conelab/curvesys.hpp"
#include "conelab/hypgeom.hpp"
#include "conelab/lab.hpp"
#include "conelab/linprog.hpp"
#include "conelab/modelmap.hpp"
