#pragma once

#include "lowreg/experiments/emit.hpp"
#include "lowreg/experiments/studies.hpp"
#include "lowreg/flows.hpp"
#include "lowreg/initial_data.hpp"
#include "lowreg/observables.hpp"
#include "lowreg/spectral.hpp"
#include "lowreg/symmetrizer.hpp"
