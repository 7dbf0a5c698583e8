// SPDX-License-Identifier: MIT
#pragma once

#include "whfact/aak.hpp"
#include "whfact/bounds.hpp"
#include "whfact/cf.hpp"
#include "whfact/chebyshev.hpp"
#include "whfact/conformal_map.hpp"
#include "whfact/error.hpp"
#include "whfact/gamma.hpp"
#include "whfact/kernels.hpp"
#include "whfact/pipeline.hpp"
#include "whfact/pullback.hpp"
#include "whfact/rational.hpp"
