// Copyright 2026 The fqsim Authors
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

#include <cstddef>

namespace fqsim::tol {

// Structural identities (unitarity, Hermiticity, involutions, exact blocks).
inline constexpr double structural = 1e-12;

// Compositional identities (group laws, long products, amplified blocks).
inline constexpr double compositional = 1e-10;

// Desk-scale execution limits.  Dense operators are only materialized up to
// kDenseLimit; encoded segments are bounded in gadget count, truncation
// order and composition-basis size so every run finishes in seconds.
inline constexpr std::size_t kDenseLimit = std::size_t{1} << 13;
inline constexpr int kMaxGadgetsPerSegment = 24;
inline constexpr int kMaxTruncationOrder = 8;
inline constexpr std::size_t kMaxEncodedDim = 250000;

// kDenseLimit, overridable through the FQSIM_DENSE_LIMIT environment
// variable (the only env knob).
std::size_t dense_limit();

}  // namespace fqsim::tol
