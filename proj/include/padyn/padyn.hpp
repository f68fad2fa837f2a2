#pragma once

// Umbrella header.

#include "errors.hpp"
#include "residue.hpp"
#include "scalar.hpp"
#include "field.hpp"
#include "element.hpp"
#include "projective.hpp"
#include "phi.hpp"
#include "checks.hpp"
#include "random.hpp"
#include "witness.hpp"
#include "parallel.hpp"
#include "symbolic.hpp"
#include "report.hpp"
#include "suites.hpp"
