#pragma once

#include "ontolab/error.hpp"
#include "ontolab/linalg.hpp"
#include "ontolab/clock.hpp"
#include "ontolab/oscillator.hpp"
#include "ontolab/info_loss.hpp"
#include "ontolab/io/graph_io.hpp"
#include "ontolab/quadrature.hpp"
#include "ontolab/fermion_sheets.hpp"
#include "ontolab/flow_lift.hpp"
#include "ontolab/blackhole.hpp"
