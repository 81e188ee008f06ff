// Umbrella header.
#pragma once

#include "msad/config.hpp"
#include "msad/engine.hpp"
#include "msad/environment.hpp"
#include "msad/experiment.hpp"
#include "msad/flows.hpp"
#include "msad/graph.hpp"
#include "msad/morphology.hpp"
#include "msad/relocation.hpp"
#include "msad/topologies.hpp"
