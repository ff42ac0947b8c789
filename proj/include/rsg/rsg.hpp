/*
 * Copyright 2026 The rsgames authors
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

#include "rsg/arena.hpp"
#include "rsg/bench.hpp"
#include "rsg/errors.hpp"
#include "rsg/format.hpp"
#include "rsg/generator.hpp"
#include "rsg/oracle.hpp"
#include "rsg/random.hpp"
#include "rsg/solvers.hpp"
#include "rsg/strategy.hpp"
