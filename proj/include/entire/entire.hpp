#pragma once

#include "entire/approximation.hpp"
#include "entire/coefficient.hpp"
#include "entire/errors.hpp"
#include "entire/estimators.hpp"
#include "entire/functions.hpp"
#include "entire/integer_approx.hpp"
#include "entire/numerics.hpp"
#include "entire/spaces.hpp"
#include "entire/spec_text.hpp"
