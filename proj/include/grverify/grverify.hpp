#pragma once

#include "grverify/constants.hpp"
#include "grverify/contour.hpp"
#include "grverify/elliptic.hpp"
#include "grverify/quadrature.hpp"
#include "grverify/representations.hpp"
#include "grverify/series_forms.hpp"
#include "grverify/special_fn.hpp"
#include "grverify/verifier.hpp"
