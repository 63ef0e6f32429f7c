// Copyright 2026 The divfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Umbrella header for the divergence-frontier library. The CLI driver lives
// in divfront/cli.hpp and is not included here.

#include "divfront/alpha.hpp"
#include "divfront/divergence.hpp"
#include "divfront/errors.hpp"
#include "divfront/estimation.hpp"
#include "divfront/exp_family.hpp"
#include "divfront/expfam_frontier.hpp"
#include "divfront/frontier.hpp"
#include "divfront/gaussian.hpp"
#include "divfront/histogram.hpp"
#include "divfront/numeric.hpp"
#include "divfront/oracle.hpp"
#include "divfront/pareto.hpp"
#include "divfront/prd.hpp"
#include "divfront/version.hpp"
