/*
 * SPDX-License-Identifier: Apache-2.0
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

#ifndef SUMVOL_SUMVOL_HPP
#define SUMVOL_SUMVOL_HPP

#include "sumvol/box_union.hpp"
#include "sumvol/decomposition.hpp"
#include "sumvol/integer_set.hpp"
#include "sumvol/interval_union.hpp"
#include "sumvol/lp.hpp"
#include "sumvol/partition.hpp"
#include "sumvol/polygon.hpp"
#include "sumvol/rational.hpp"
#include "sumvol/region.hpp"
#include "sumvol/set_function.hpp"
#include "sumvol/subset.hpp"

#endif  // SUMVOL_SUMVOL_HPP
