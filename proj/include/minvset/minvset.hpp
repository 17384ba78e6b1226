#pragma once

#include "minvset/bipoly.hpp"
#include "minvset/correspondence.hpp"
#include "minvset/diffop.hpp"
#include "minvset/dynamics.hpp"
#include "minvset/errors.hpp"
#include "minvset/geometry.hpp"
#include "minvset/julia.hpp"
#include "minvset/poly.hpp"
#include "minvset/roots.hpp"
#include "minvset/scalar.hpp"
#include "minvset/spectral.hpp"
