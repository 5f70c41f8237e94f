/*
 * Copyright 2026 The tiso Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

/// Umbrella header.

#include "tiso/codes.hpp"
#include "tiso/conj.hpp"
#include "tiso/error.hpp"
#include "tiso/experiment.hpp"
#include "tiso/gf.hpp"
#include "tiso/instance.hpp"
#include "tiso/io.hpp"
#include "tiso/matrix.hpp"
#include "tiso/poly.hpp"
#include "tiso/rmt.hpp"
#include "tiso/rng.hpp"
#include "tiso/solvers.hpp"
#include "tiso/tensor.hpp"
