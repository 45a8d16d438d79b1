#pragma once

#include "gegen/errors.hpp"
#include "gegen/numeric_core.hpp"
#include "gegen/bessel.hpp"
#include "gegen/hypergeometric.hpp"
#include "gegen/exact.hpp"
#include "gegen/asymptotics.hpp"
#include "gegen/legendre.hpp"
