#pragma once

#include "vcert/belts.hpp"
#include "vcert/certifier.hpp"
#include "vcert/delaunay.hpp"
#include "vcert/errors.hpp"
#include "vcert/json_io.hpp"
#include "vcert/linalg.hpp"
#include "vcert/parallelotope.hpp"
#include "vcert/rational.hpp"
#include "vcert/tiling_patch.hpp"
#include "vcert/vertices.hpp"
#include "vcert/voronoi.hpp"
