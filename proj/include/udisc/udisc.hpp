// Copyright 2026 The udisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UDISC_UDISC_HPP
#define UDISC_UDISC_HPP

#include "udisc/applications.hpp"
#include "udisc/errors.hpp"
#include "udisc/geometry.hpp"
#include "udisc/io.hpp"
#include "udisc/matcore.hpp"
#include "udisc/oracle.hpp"
#include "udisc/povm.hpp"
#include "udisc/random.hpp"
#include "udisc/solvers.hpp"

#endif  // UDISC_UDISC_HPP
