#pragma once

#include "ffcs/analysis.hpp"
#include "ffcs/anderson.hpp"
#include "ffcs/error.hpp"
#include "ffcs/fixtures.hpp"
#include "ffcs/greeks.hpp"
#include "ffcs/interp.hpp"
#include "ffcs/model.hpp"
#include "ffcs/reference_tables.hpp"
#include "ffcs/reproduce.hpp"
#include "ffcs/scheme.hpp"
#include "ffcs/solver.hpp"
