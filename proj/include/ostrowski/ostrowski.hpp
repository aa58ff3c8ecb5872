#pragma once

#include "ostrowski/bounds.hpp"
#include "ostrowski/dual.hpp"
#include "ostrowski/error.hpp"
#include "ostrowski/expr.hpp"
#include "ostrowski/function_model.hpp"
#include "ostrowski/means.hpp"
#include "ostrowski/mediant.hpp"
#include "ostrowski/norms.hpp"
#include "ostrowski/quad.hpp"
