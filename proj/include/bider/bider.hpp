#pragma once

#include "bider/scalar.hpp"
#include "bider/echelon.hpp"
#include "bider/linalg.hpp"
#include "bider/basis.hpp"
#include "bider/algebra.hpp"
#include "bider/maps.hpp"
#include "bider/solver.hpp"
#include "bider/catalog.hpp"
#include "bider/extension.hpp"
#include "bider/applications.hpp"
#include "bider/report.hpp"
#include "bider/sweep.hpp"
