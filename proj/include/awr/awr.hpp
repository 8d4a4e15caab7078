#pragma once

// Aw-Rascle traffic model with a flux constraint at x = 0.

#include "awr/error.hpp"
#include "awr/roots.hpp"
#include "awr/pressure.hpp"
#include "awr/model.hpp"
#include "awr/riemann.hpp"
#include "awr/random.hpp"
#include "awr/domains.hpp"
#include "awr/tv.hpp"
#include "awr/fvm.hpp"
#include "awr/cli.hpp"
