#pragma once

#include "errors.hpp"
#include "rational.hpp"
#include "graphs.hpp"
#include "polytope.hpp"
#include "families.hpp"
#include "linalg.hpp"
#include "invariants.hpp"
#include "optimize.hpp"
#include "witnesses.hpp"
