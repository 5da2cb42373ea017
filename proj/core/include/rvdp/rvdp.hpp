#pragma once

#include "rvdp/classical.hpp"
#include "rvdp/errors.hpp"
#include "rvdp/evolution.hpp"
#include "rvdp/fock.hpp"
#include "rvdp/liouvillian.hpp"
#include "rvdp/observables.hpp"
#include "rvdp/perturbation.hpp"
#include "rvdp/presets.hpp"
#include "rvdp/propagator.hpp"
#include "rvdp/spectrum.hpp"
#include "rvdp/sweep.hpp"
