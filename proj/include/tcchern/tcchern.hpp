#pragma once

#include "tcchern/chern_weil.hpp"
#include "tcchern/cli.hpp"
#include "tcchern/generators.hpp"
#include "tcchern/polyring/json.hpp"
#include "tcchern/polyring/polynomial.hpp"
#include "tcchern/polyring/symmetric.hpp"
#include "tcchern/quotient.hpp"
#include "tcchern/weyl.hpp"
