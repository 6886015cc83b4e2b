#pragma once

#include "pointlab/branches.hpp"
#include "pointlab/clusters.hpp"
#include "pointlab/configuration.hpp"
#include "pointlab/errors.hpp"
#include "pointlab/interchange.hpp"
#include "pointlab/kronig_penney.hpp"
#include "pointlab/matrix.hpp"
#include "pointlab/percolation.hpp"
#include "pointlab/perron.hpp"
#include "pointlab/rng.hpp"
#include "pointlab/sampling.hpp"
#include "pointlab/solver.hpp"
#include "pointlab/specfun.hpp"
#include "pointlab/spectral.hpp"
#include "pointlab/version.hpp"
