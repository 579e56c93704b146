#pragma once

#include "rotalign/basis.hpp"
#include "rotalign/config.hpp"
#include "rotalign/errors.hpp"
#include "rotalign/experiment.hpp"
#include "rotalign/field.hpp"
#include "rotalign/molecule.hpp"
#include "rotalign/observables.hpp"
#include "rotalign/output.hpp"
#include "rotalign/presets.hpp"
#include "rotalign/propagator.hpp"
#include "rotalign/units.hpp"
