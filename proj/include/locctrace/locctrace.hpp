// Copyright 2026 The locctrace developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// Umbrella header.

#pragma once

#include "locctrace/block_encoding.hpp"
#include "locctrace/chebyshev.hpp"
#include "locctrace/divergence.hpp"
#include "locctrace/errors.hpp"
#include "locctrace/hamiltonian.hpp"
#include "locctrace/io.hpp"
#include "locctrace/linear_solve.hpp"
#include "locctrace/matrix.hpp"
#include "locctrace/parallel.hpp"
#include "locctrace/poly_targets.hpp"
#include "locctrace/protocol.hpp"
#include "locctrace/random.hpp"
#include "locctrace/rng.hpp"
#include "locctrace/svt.hpp"
#include "locctrace/trace_fg.hpp"
