// Copyright (c) 2026 The conewind developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "conewind/chebyshev.hpp"
#include "conewind/errors.hpp"
#include "conewind/laplace.hpp"
#include "conewind/levy.hpp"
#include "conewind/mc.hpp"
#include "conewind/polynomial.hpp"
#include "conewind/quadrature.hpp"
#include "conewind/rng.hpp"
#include "conewind/stats.hpp"
