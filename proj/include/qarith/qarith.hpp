// Copyright 2026 the qarith authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qarith/circuit.hpp"
#include "qarith/circuit_text.hpp"
#include "qarith/comparator.hpp"
#include "qarith/const_arith.hpp"
#include "qarith/error.hpp"
#include "qarith/factoring.hpp"
#include "qarith/layout.hpp"
#include "qarith/phase_estimation.hpp"
#include "qarith/qft.hpp"
#include "qarith/resources.hpp"
#include "qarith/ripple.hpp"
#include "qarith/simulator.hpp"
#include "qarith/var_mod.hpp"
