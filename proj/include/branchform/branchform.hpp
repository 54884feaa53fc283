#pragma once

// Everything header-only. report.hpp and verify.hpp need the branchform_app library.

#include "bivariate.hpp"
#include "error.hpp"
#include "family.hpp"
#include "lambda_set.hpp"
#include "linalg.hpp"
#include "normal_form.hpp"
#include "parse.hpp"
#include "puiseux.hpp"
#include "rational.hpp"
#include "semigroup.hpp"
#include "series.hpp"
#include "valuation.hpp"
