// Copyright 2026 The hyncg Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "hyncg/solvers/ag.hpp"
#include "hyncg/solvers/cg.hpp"
#include "hyncg/solvers/common.hpp"
#include "hyncg/solvers/gd.hpp"
#include "hyncg/solvers/hyncg.hpp"
#include "hyncg/solvers/ncg.hpp"
