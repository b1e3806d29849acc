#pragma once

#include "tcchern/chern_weil/chern2.hpp"
#include "tcchern/chern_weil/cocycles.hpp"
#include "tcchern/chern_weil/curvature.hpp"
#include "tcchern/chern_weil/profile.hpp"
#include "tcchern/chern_weil/quadrature.hpp"
#include "tcchern/chern_weil/registry.hpp"
#include "tcchern/chern_weil/su2.hpp"
