// Copyright 2026 The sschar Authors
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

/// \file
/// \brief Umbrella header.

#ifndef SSCHAR__SSCHAR_HPP_
#define SSCHAR__SSCHAR_HPP_

#include "sschar/vec2.hpp"
#include "sschar/geometry2d.hpp"
#include "sschar/hamiltonian.hpp"
#include "sschar/semiconcave.hpp"
#include "sschar/phimap.hpp"
#include "sschar/lipcurve.hpp"
#include "sschar/tracer.hpp"
#include "sschar/scene.hpp"
#include "sschar/scenarios.hpp"
#include "sschar/output.hpp"

#endif  // SSCHAR__SSCHAR_HPP_
