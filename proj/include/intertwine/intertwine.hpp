#pragma once

#include "error.hpp"
#include "field.hpp"
#include "jet.hpp"
#include "models.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "specfun.hpp"
#include "tolerances.hpp"
#include "tridiagonal.hpp"
#include "verify.hpp"
