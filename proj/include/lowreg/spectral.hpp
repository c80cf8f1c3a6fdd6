#pragma once

#include "lowreg/field.hpp"
#include "lowreg/field_io.hpp"
#include "lowreg/grid.hpp"
#include "lowreg/norms.hpp"
#include "lowreg/products.hpp"
#include "lowreg/symbols.hpp"
#include "lowreg/transforms.hpp"
