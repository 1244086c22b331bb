// Copyright (c) 2026 the mev developers.
// All rights reserved.
//
// mev is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEV_MEV_HPP
#define MEV_MEV_HPP

#include "mev/compare.hpp"
#include "mev/distributions.hpp"
#include "mev/errors.hpp"
#include "mev/fitting.hpp"
#include "mev/ingest.hpp"
#include "mev/io.hpp"
#include "mev/mevd.hpp"
#include "mev/numerics.hpp"
#include "mev/simulator.hpp"
#include "mev/station.hpp"
#include "mev/superstat.hpp"

namespace mev {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mev

#endif  // MEV_MEV_HPP
