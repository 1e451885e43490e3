// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fieldoverlap/analysis.hpp"
#include "fieldoverlap/mc_engine.hpp"
#include "fieldoverlap/mc_types.hpp"
#include "fieldoverlap/oracle.hpp"
#include "fieldoverlap/overlap.hpp"
#include "fieldoverlap/random.hpp"
#include "fieldoverlap/samplers.hpp"
#include "fieldoverlap/states.hpp"
#include "fieldoverlap/summation.hpp"
