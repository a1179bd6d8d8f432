// Copyright 2026 The alg2d Authors
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

#ifndef ALG2D_ALG2D_HPP_
#define ALG2D_ALG2D_HPP_

#include "alg2d/classifier.hpp"
#include "alg2d/evolution.hpp"
#include "alg2d/msc.hpp"
#include "alg2d/oracle.hpp"
#include "alg2d/poly.hpp"
#include "alg2d/properties.hpp"

#endif  // ALG2D_ALG2D_HPP_
