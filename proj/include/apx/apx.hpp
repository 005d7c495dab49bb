// Copyright 2026 The apx Authors
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

// Umbrella header.
#ifndef APX_APX_HPP_
#define APX_APX_HPP_

#include "apx/bfs.hpp"
#include "apx/bench.hpp"
#include "apx/closeness.hpp"
#include "apx/core.hpp"
#include "apx/estimate.hpp"
#include "apx/generators.hpp"
#include "apx/graph.hpp"
#include "apx/init.hpp"
#include "apx/overlay.hpp"
#include "apx/parallel.hpp"
#include "apx/pipeline.hpp"
#include "apx/pivots.hpp"
#include "apx/sampling.hpp"
#include "apx/verify.hpp"

#endif  // APX_APX_HPP_
