#pragma once

#include "crofton/convex_body.hpp"
#include "crofton/errors.hpp"
#include "crofton/mc.hpp"
#include "crofton/measures.hpp"
#include "crofton/quadrature.hpp"
#include "crofton/rng.hpp"
#include "crofton/setfun.hpp"
#include "crofton/solid_angle.hpp"
#include "crofton/sphere.hpp"
#include "crofton/vec.hpp"
