#pragma once

#include "weinlab/errors.hpp"
#include "weinlab/special_functions.hpp"
#include "weinlab/quadrature.hpp"
#include "weinlab/grid.hpp"
#include "weinlab/grid_function.hpp"
#include "weinlab/expression.hpp"
#include "weinlab/random.hpp"
#include "weinlab/sets.hpp"
#include "weinlab/transform.hpp"
#include "weinlab/concentration.hpp"
#include "weinlab/functions.hpp"
#include "weinlab/inequalities.hpp"
#include "weinlab/sweep.hpp"
#include "weinlab/report_io.hpp"
#include "weinlab/sample_io.hpp"
