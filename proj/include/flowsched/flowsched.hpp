// Copyright 2026 The flowsched Authors
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

#include "flowsched/bench.hpp"
#include "flowsched/cossp.hpp"
#include "flowsched/cover.hpp"
#include "flowsched/delay_cost.hpp"
#include "flowsched/edf.hpp"
#include "flowsched/error.hpp"
#include "flowsched/gen.hpp"
#include "flowsched/io.hpp"
#include "flowsched/lp.hpp"
#include "flowsched/model.hpp"
#include "flowsched/oracle.hpp"
#include "flowsched/pcsp.hpp"
#include "flowsched/rational.hpp"
#include "flowsched/simplex.hpp"
