#pragma once

#include "zetaforge/core.hpp"
#include "zetaforge/gamma.hpp"
#include "zetaforge/quadrature.hpp"
#include "zetaforge/bessel.hpp"
#include "zetaforge/arithmetic.hpp"
#include "zetaforge/exactnum.hpp"
#include "zetaforge/specialfn.hpp"
#include "zetaforge/zetavalues.hpp"
#include "zetaforge/wilton.hpp"
